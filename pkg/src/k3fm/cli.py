"""Command-line front end: ``k3fm {discform,isotropic,count-fm,picard1,oracle}``."""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from .discform import DEFAULT_CAP, FiniteIsometry, isotropic_elements
from .errors import K3FMError, ParseError
from .fmcount import HodgeGroupSpec, count_fm
from .lattice import discriminant_form, disc_lift, load_gram_file, parse_lattice
from .oracle import run_all
from .picard1 import admissible_d, closed_count, list_partners


def _frac(v: Fraction) -> str:
    return str(Fraction(v))


def _range(text: str) -> List[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if lo > hi:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range a..b, got {text!r}")


def _emit(obj, fmt: str, table_lines: List[str]):
    if fmt == "json":
        print(json.dumps(obj, separators=(", ", ": ")))
    else:
        for line in table_lines:
            print(line)


def _lattice(args):
    if (args.lattice is None) == (args.gram is None):
        raise ParseError("give exactly one of --lattice or --gram")
    if args.gram is not None:
        return load_gram_file(args.gram)
    return parse_lattice(args.lattice)


def _hodge(spec: str) -> HodgeGroupSpec:
    if spec in ("pm", "plusminus"):
        return HodgeGroupSpec.plus_minus()
    if spec == "trivial":
        return HodgeGroupSpec.trivial()
    try:
        data = json.loads(Path(spec).read_text())
        gens = data["generators"]
        return HodgeGroupSpec.explicit(
            [FiniteIsometry(None, tuple(tuple(int(c) for c in img) for img in g)) for g in gens])
    except OSError as exc:
        raise ParseError(f"cannot read Hodge generator file {spec!r}: {exc.strerror}") from None
    except (ValueError, KeyError, TypeError):
        raise ParseError(f"{spec!r}: expected 'trivial', 'pm' or a JSON file "
                         "{\"generators\": [[[int, ...], ...], ...]}") from None


def _bind_factors(G: HodgeGroupSpec, factors) -> HodgeGroupSpec:
    if G.variant != "explicit":
        return G
    gens = []
    for g in G.generators:
        if len(g.images) != len(factors) or any(len(img) != len(factors) for img in g.images):
            raise K3FMError("Hodge generator does not match the shape of D_NS")
        gens.append(FiniteIsometry(tuple(factors),
                                   tuple(tuple(c % f for c, f in zip(img, factors))
                                         for img in g.images)))
    return HodgeGroupSpec.explicit(gens)


# -- commands -----------------------------------------------------------------

def cmd_discform(args):
    L = _lattice(args)
    D, gens = discriminant_form(L)
    obj = {
        "lattice": str(L), "rank": L.rank, "signature": list(L.signature), "det": L.det,
        "invariant_factors": list(D.factors),
        "q": [_frac(v) for v in D.q_gens],
        "b": [[_frac(v) for v in row] for row in D.b_gens],
        "generators": [[_frac(v) for v in g] for g in gens],
    }
    if D.is_trivial:
        line = "trivial"
    else:
        names = ["g"] if D.rank == 1 else [f"g{i + 1}" for i in range(D.rank)]
        parts = [str(D)] + [f"q({n})={_frac(v)}" for n, v in zip(names, D.q_gens)]
        parts += [f"b({names[i]},{names[j]})={_frac(D.b_gens[i][j])}"
                  for i in range(D.rank) for j in range(i + 1, D.rank)]
        line = ", ".join(parts)
    _emit(obj, args.format, [line])


def cmd_isotropic(args):
    L = _lattice(args)
    D, _ = discriminant_form(L)
    elems = isotropic_elements(D, args.d, args.cap)
    records = []
    lines = []
    for x in elems:
        lift = disc_lift(L, x)
        norm = L.pair(lift, lift)
        records.append({"x": list(x), "order": D.order_of(x), "q": _frac(D.q(x)),
                        "lift": [_frac(v) for v in lift], "norm": _frac(norm)})
        lines.append(f"x={tuple(x)} order={D.order_of(x)} q={_frac(D.q(x))} "
                     f"(lift,lift)={_frac(norm)}")
    _emit({"d": args.d, "invariant_factors": list(D.factors), "elements": records},
          args.format, lines or ["(none)"])


def cmd_count_fm(args):
    L = _lattice(args)
    D, _ = discriminant_form(L)
    G = _bind_factors(_hodge(args.hodge), D.factors)
    rep = count_fm(L, args.d, G, args.cap)
    total = "unsupported" if rep.total is None else rep.total
    lines = [f"d={rep.d} mode={rep.mode} total={total}"]
    for e in rep.orbits:
        lines.append(f"  x={tuple(e.x)} tau={e.tau} class={e.g_class} M={e.M_gram}")
    if rep.reason:
        lines.append(f"  reason: {rep.reason}")
    _emit(rep.as_json(), args.format, lines)


def cmd_picard1(args):
    for n in args.n:
        if n < 1:
            raise K3FMError("n must be positive")
        ds = args.d if args.d is not None else admissible_d(n)
        for d in ds:
            if d < 1:
                raise K3FMError("d must be positive")
            count = closed_count(n, d)
            obj = {"n": n, "d": d, "count": count}
            lines = [f"n={n} d={d} count={count}"]
            if n % (d * d):
                obj["reason"] = "d^2 does not divide n"
                lines[0] += " (d^2 does not divide n)"
            if args.list_partners:
                parts = list_partners(n, d) if n % (d * d) == 0 else []
                obj["partners"] = [p.as_json() for p in parts]
                for p in parts:
                    lines.append(f"  sigma={list(p.sigma.sigma)} r={p.sigma.r} s={p.sigma.s} "
                                 f"k={p.k} k~={p.k_tilde} v=({p.v[0]}, {p.v[1]}H, {p.v[2]}) "
                                 f"NS=<{p.partner_ns_disc}> ord={p.twist_order}")
            _emit(obj, args.format, lines)


def cmd_oracle(args):
    results = run_all(args.n)
    ok = all(r[1] for r in results)
    if args.format == "json":
        print(json.dumps({"checks": [{"name": n, "pass": p, "detail": d} for n, p, d in results],
                          "pass": ok}))
    else:
        for name, passed, detail in results:
            print(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
    return 0 if ok else 1


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="table")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="size cap for brute-force enumerations")
    lat = argparse.ArgumentParser(add_help=False)
    lat.add_argument("--lattice", help="lattice expression, e.g. 'U+<-8>' or 'U(2)'")
    lat.add_argument("--gram", help="JSON file {\"gram\": [[...]]}")

    p = argparse.ArgumentParser(prog="k3fm", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("discform", parents=[common, lat], help="discriminant form of a lattice")
    s.set_defaults(func=cmd_discform)

    s = sub.add_parser("isotropic", parents=[common, lat], help="isotropic elements of order d")
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(func=cmd_isotropic)

    s = sub.add_parser("count-fm", parents=[common, lat], help="twisted FM partner count")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--hodge", default="pm", help="'trivial', 'pm' or a generator JSON file")
    s.set_defaults(func=cmd_count_fm)

    s = sub.add_parser("picard1", parents=[common], help="Picard rank one counts and partners")
    s.add_argument("--n", type=_range, required=True, help="n or a range a..b")
    s.add_argument("--d", type=_range, default=None, help="d or a range; default: all admissible")
    s.add_argument("--list-partners", action="store_true")
    s.set_defaults(func=cmd_picard1)

    s = sub.add_parser("oracle", parents=[common], help="run brute-force cross-checks")
    s.add_argument("--n", type=_range, default=_range("1..30"))
    s.set_defaults(func=cmd_oracle)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    fmt = getattr(args, "format", "table")

    def fail(exc, code):
        if fmt == "json":
            print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return code

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            code = args.func(args) or 0
        except ParseError as exc:
            code = fail(exc, 2)
        except K3FMError as exc:
            code = fail(exc, 1)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
