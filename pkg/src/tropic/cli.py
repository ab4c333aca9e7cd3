"""Command-line front end.

Exit codes: 0 affirmative (implication holds, point is extreme, success),
1 negative, 2 input error.  Indices in files and output are 1-based.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import cone, farkas, formats, game, hypergraph, models
from .semiring import BOTTOM, TropicError, format_scalar

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _vec(x) -> str:
    return " ".join(format_scalar(v) for v in x)


def _jvec(x) -> list:
    return [formats.to_json_scalar(v) for v in x]


def _emit(args, text: str, payload) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)


def _index(value: int, n: int, what: str) -> int:
    if not 1 <= value <= n:
        raise ValueError(f"{what} {value} out of range 1..{n}")
    return value - 1


# ----------------------------------------------------------------- commands


def cmd_polar(args) -> int:
    K = cone.GeneratorCone(formats.read_matrix(_read(args.matrix)))
    i = None if args.i is None else _index(args.i, K.n, "--i")
    system = cone.enumerate_polar_extreme(K, i)
    _emit(args, formats.write_system(system), {"inequalities": [formats.inequality_to_json(q) for q in system]})
    return EXIT_YES


def cmd_extreme_check(args) -> int:
    y = formats.parse_vector(args.point)
    if args.polar is not None:
        K = cone.GeneratorCone(formats.read_matrix(_read(args.file)))
        i = _index(args.polar, K.n, "--polar")
        ok = hypergraph.star_test(K, i, y)
    else:
        ok = hypergraph.is_extreme_general(formats.read_system(_read(args.file)), y)
    _emit(args, f"extreme: {'yes' if ok else 'no'}\n", {"extreme": ok})
    return EXIT_YES if ok else EXIT_NO


def _sigma_text(sigma) -> str:
    return " ".join(str(i + 1) for i in sigma)


def _trace_payload(trace) -> dict:
    return {
        "scale": trace.scale,
        "kept_rows": [r + 1 for r in trace.kept_rows],
        "kept_vars": [j + 1 for j in trace.kept_vars],
        "eliminated_rows": [r + 1 for r in trace.eliminated_rows],
        "eliminated_vars": [j + 1 for j in trace.eliminated_vars],
        "added_rows": [j + 1 for j in trace.added_rows],
        "bound": formats.to_json_scalar(trace.bound),
        "d_replacements": [[j + 1, formats.to_json_scalar(v)] for j, v in trace.d_replacements],
    }


def cmd_farkas_check(args) -> int:
    system = formats.read_system(_read(args.system))
    goal = formats.read_inequality(args.goal)
    if system and system[0].n != goal.n:
        raise ValueError(f"goal has dimension {goal.n}, system has {system[0].n}")
    imp = farkas.Implication.from_system(system, goal)
    try:
        _, _, trace = farkas.implication_game(imp)
    except farkas.VacuousImplication as exc:
        _emit(args, f"holds: yes\nvacuous: {exc}\n", {"holds": True, "vacuous": str(exc)})
        return EXIT_YES
    lines, payload = [], {"normalization": _trace_payload(trace)}
    cert = farkas.find_min_certificate(imp)
    if cert is not None:
        ok = farkas.verify_min_certificate(imp, cert)
        lines += ["holds: yes", f"sigma: {_sigma_text(cert.sigma)}", f"verified: {'yes' if ok else 'no'}"]
        payload.update(holds=True, sigma=[i + 1 for i in cert.sigma], verified=ok)
        code = EXIT_YES
    else:
        cert = farkas.find_max_certificate(imp)
        ok = farkas.verify_max_certificate(imp, cert)
        lines += ["holds: no", f"pi: {_sigma_text(cert.pi)}", f"column: {cert.j + 1}",
                  f"counterexample: {_vec(cert.x)}", f"verified: {'yes' if ok else 'no'}"]
        payload.update(holds=False, pi=[j + 1 for j in cert.pi], column=cert.j + 1,
                       counterexample=_jvec(cert.x), verified=ok)
        code = EXIT_NO
    _emit(args, "\n".join(lines) + "\n", payload)
    return code


def _parse_order(text: str | None, size: int) -> list:
    if text is None:
        return list(range(size))
    if text.startswith("seed:"):
        order = list(range(size))
        random.Random(int(text[5:])).shuffle(order)
        return order
    order = [int(v) - 1 for v in text.replace(",", " ").split()]
    if sorted(order) != list(range(size)):
        raise ValueError(f"--order must be a permutation of 1..{size}")
    return order


def cmd_farkas_minimize(args) -> int:
    system = formats.read_system(_read(args.system))
    order = _parse_order(args.order, len(system))
    kept = farkas.minimize_system(system, order)
    certs = farkas.minimality_certificates(kept)
    text = formats.write_system(kept) + "certificates:\n" + "".join(_vec(x) + "\n" for x in certs)
    _emit(args, text, {
        "system": [formats.inequality_to_json(q) for q in kept],
        "certificates": [_jvec(x) for x in certs],
    })
    return EXIT_YES


def cmd_game_solve(args) -> int:
    A, B, c, d = formats.read_game(_read(args.game))
    g = game.build_game(A, B, c, d)
    lam = formats.parse_vector(args.lam)
    if len(lam) != 1 or lam[0] is BOTTOM:
        raise ValueError("--lambda needs one finite rational")
    chi = game.cycle_time(g, lam[0], args.engine)
    r = max(chi)
    _emit(args, f"chi: {_vec(chi)}\nrho: {format_scalar(r)}\n", {"chi": _jvec(chi), "rho": formats.to_json_scalar(r)})
    return EXIT_YES


def _emit_cone(args, K) -> int:
    _emit(args, formats.write_matrix(K.G), {"matrix": formats.matrix_to_json(K.G)})
    return EXIT_YES


def cmd_models_cyclic(args) -> int:
    return _emit_cone(args, models.cyclic_cone(formats.parse_vector(args.t), args.n))


def cmd_models_block(args) -> int:
    return _emit_cone(args, models.block_example(args.p, args.q))


def cmd_models_transversal(args) -> int:
    num, edges = formats.read_hypergraph(_read(args.hypergraph))
    return _emit_cone(args, models.transversal_matrix(num, edges))


def cmd_transversals(args) -> int:
    num, edges = formats.read_hypergraph(_read(args.hypergraph))
    sets = models.minimal_transversals(num, edges)
    rows = [sorted(v + 1 for v in s) for s in sets]
    _emit(args, "".join(" ".join(map(str, r)) + "\n" for r in rows), {"transversals": rows})
    return EXIT_YES


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit JSON instead of text")
    parser = argparse.ArgumentParser(
        prog="tropic",
        parents=[common],
        description="Tropical polars, extremality tests and implication checking.",
        epilog="exit status: 0 affirmative, 1 negative, 2 input error",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("polar", parents=[common], help="extreme inequalities of a cone")
    p.add_argument("matrix", help="generator matrix file (rows are generators)")
    p.add_argument("--i", type=int, help="only the i-th polar (1-based)")
    p.set_defaults(func=cmd_polar)

    p = sub.add_parser("extreme-check", parents=[common], help="extremality of a point")
    p.add_argument("file", help="inequality system, or a matrix with --polar")
    p.add_argument("--point", required=True, help="the point, e.g. '1 0 -inf'")
    p.add_argument("--polar", type=int, help="test extremality in this i-th polar of the matrix cone")
    p.set_defaults(func=cmd_extreme_check)

    fk = sub.add_parser("farkas", help="implications between inequalities")
    fsub = fk.add_subparsers(dest="action", required=True)
    p = fsub.add_parser("check", parents=[common], help="does the system imply the goal?")
    p.add_argument("system")
    p.add_argument("--goal", required=True, help="inequality 'a1 ... an <= b1 ... bn'")
    p.set_defaults(func=cmd_farkas_check)
    p = fsub.add_parser("minimize", parents=[common], help="greedy removal of implied inequalities")
    p.add_argument("system")
    p.add_argument("--order", help="scan order: 1-based permutation '3,1,2' or 'seed:N'")
    p.set_defaults(func=cmd_farkas_minimize)

    gm = sub.add_parser("game", help="mean payoff games")
    gsub = gm.add_subparsers(dest="action", required=True)
    p = gsub.add_parser("solve", parents=[common], help="cycle time and spectral radius")
    p.add_argument("game")
    p.add_argument("--lambda", dest="lam", required=True, help="rational parameter")
    p.add_argument("--engine", choices=["strategies", "iteration"], default="strategies")
    p.set_defaults(func=cmd_game_solve)

    md = sub.add_parser("models", help="benchmark constructions")
    msub = md.add_subparsers(dest="model", required=True)
    p = msub.add_parser("cyclic", parents=[common])
    p.add_argument("--t", required=True, help="increasing rationals, e.g. 1,2,3")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_models_cyclic)
    p = msub.add_parser("block", parents=[common])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_models_block)
    p = msub.add_parser("transversal", parents=[common])
    p.add_argument("hypergraph")
    p.set_defaults(func=cmd_models_transversal)

    p = sub.add_parser("transversals", parents=[common], help="minimal transversals of a hypergraph")
    p.add_argument("hypergraph")
    p.set_defaults(func=cmd_transversals)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if not hasattr(args, "json"):
        args.json = False
    try:
        return args.func(args)
    except (TropicError, ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
