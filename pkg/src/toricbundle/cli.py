"""Command line interface.

Exit codes: 0 success, 1 mathematical finding (invalid fan, failed check),
2 usage or parse error.
"""

import argparse
import itertools
import json
import math
import os
import sys

from . import catalog
from .algebra import Mode, format_coeff
from .checks import (agreement_additive, agreement_multiplicative, algebra_laws,
                     freeness_additive, freeness_multiplicative, random_u_membership, soundness)
from .fan import FanInputError, label
from .oracle import FreenessViolation
from .polyparse import ParseError, parse_target_value, parse_xpoly
from .presentation import build
from .reducer import Reducer
from .ringops import (SpecializationError, SpecializationTarget, betti, duality_check,
                      mult_table, specialize)
from .serialize import (dumps, fan_from_json, fan_to_json, normal_form_to_json,
                        presentation_to_json, shelling_to_json, specialized_table_to_json,
                        table_to_json)
from .shelling import (NoShellingError, ShellingError, ShellingInconclusive,
                       UnsupportedFanError, brute_force_orders, enumerate_orders,
                       find_shelling, shelling_data)


class UsageError(Exception):
    pass


class Finding(Exception):
    pass


def load_fan(path):
    """Read a fan file; a bare catalog name (e.g. p2) is accepted too."""
    if not os.path.exists(path):
        name = path[len("catalog:"):] if path.startswith("catalog:") else path
        if name in catalog.catalog():
            return catalog.get(name), None
        raise UsageError(f"{path}: no such file or catalog fan")
    raw = open(path, "rb").read()
    try:
        data = json.loads(raw.decode("utf-8"))
    except UnicodeDecodeError as e:
        raise UsageError(f"{path}: not UTF-8 (byte offset {e.start})")
    except json.JSONDecodeError as e:
        offset = len(e.doc[:e.pos].encode("utf-8"))
        raise UsageError(f"{path}: parse error at byte offset {offset}: {e.msg}")
    try:
        return fan_from_json(data)
    except FanInputError as e:
        raise UsageError(f"{path}: {e}")


def _order_for(fan, order, args):
    rep = fan.validate()
    if not rep.ok:
        if not rep.complete:
            raise Finding("ordering requires complete fan")
        raise Finding("invalid fan: " + "; ".join(rep.diagnostics))
    if order is not None:
        sd = shelling_data(fan, order)
        if not sd.star_ok:
            raise Finding("the order given in the fan file violates (*)")
        return sd
    try:
        return find_shelling(fan, require_star_prime=getattr(args, "require_star_prime", False),
                             seed=args.seed)
    except ShellingInconclusive as e:
        raise Finding(f"search inconclusive: {e}")
    except NoShellingError as e:
        raise Finding(str(e))


def _write(text, out=None):
    sys.stdout.write(text)


# -- commands ------------------------------------------------------------------

def cmd_validate(args):
    fan, _ = load_fan(args.fan)
    rep = fan.validate()
    if rep.ok:
        print(f"smooth complete fan, d={fan.d}, m={fan.m}")
        return 0
    flags = [k for k in ("simplicial", "smooth", "pure", "complete", "fan_condition")
             if not getattr(rep, k)]
    print("invalid fan: not " + ", not ".join(f.replace("_", " ") for f in flags))
    for line in rep.diagnostics:
        print(f"  {line}")
    return 1


def cmd_order(args):
    fan, order = load_fan(args.fan)
    rep = fan.validate()
    if not rep.complete or not rep.fan_condition:
        raise Finding("ordering requires complete fan")
    if args.exhaustive:
        star = enumerate_orders(fan, False, node_limit=args.node_limit)
        both = enumerate_orders(fan, True, node_limit=args.node_limit)
        total = math.factorial(fan.m)
        print(f"{total} orders of {fan.m} maximal cones")
        print(f"{len(star)} satisfy (*)")
        print(f"{len(both)} satisfy (*) and (*')")
        if fan.m <= 8:
            bf = brute_force_orders(fan)
            agree = sorted(o for o, s, _ in bf if s) == sorted(star) and \
                sorted(o for o, s, p in bf if s and p) == sorted(both)
            print(f"brute force over all {len(bf)} orders {'agrees' if agree else 'DISAGREES'}")
            if not agree:
                return 1
        for o in (both if args.require_star_prime else star)[:args.limit]:
            print(" ".join(str(k + 1) for k in o))
        return 0
    if order is not None:
        sd = shelling_data(fan, order)
    else:
        sd = find_shelling(fan, require_star_prime=args.require_star_prime, seed=args.seed,
                           node_limit=args.node_limit)
    if args.json:
        _write(dumps(shelling_to_json(sd)))
    else:
        print("order: " + " ".join(str(k + 1) for k in sd.order))
        print("cones: " + sd.describe())
        print("tau:   " + " ".join(label(t) for t in sd.tau))
        print(f"(*) {'ok' if sd.star_ok else 'fails'}, (*') {'ok' if sd.star_prime_ok else 'fails'}")
    return 0 if sd.star_ok and (sd.star_prime_ok or not args.require_star_prime) else 1


def cmd_present(args):
    fan, order = load_fan(args.fan)
    sd = _order_for(fan, order, args)
    out = presentation_to_json(build(fan, sd, Mode(args.mode)))
    out["order"] = [k + 1 for k in sd.order]
    _write(dumps(out))
    return 0


def cmd_reduce(args):
    fan, order = load_fan(args.fan)
    try:
        p = parse_xpoly(args.poly, fan.d, fan.dim, Mode(args.mode))
    except ParseError as e:
        raise UsageError(str(e))
    sd = _order_for(fan, order, args)
    nf = Reducer(fan, sd, Mode(args.mode)).reduce(p)
    if args.format == "text":
        print(nf)
    else:
        _write(dumps(normal_form_to_json(nf)))
    return 0


def parse_target(spec: str, n: int) -> SpecializationTarget:
    """Forms: "r=0", "r1=2,r2=-1", "t1^2: r1=3*t1", "t1^2,t2^3: r1=1+t1,r2=t2"."""
    caps = []
    body = spec
    if ":" in spec:
        head, body = spec.split(":", 1)
        for part in head.split(","):
            part = part.strip()
            name, _, e = part.partition("^")
            if not name.startswith("t") or not name[1:].isdigit() or not e.isdigit():
                raise UsageError(f"bad truncation {part!r}; expected t<k>^<cap>")
            if int(name[1:]) != len(caps) + 1:
                raise UsageError("truncation variables must be listed as t1, t2, ...")
            caps.append(int(e))
    values = [None] * n
    for part in body.split(","):
        part = part.strip()
        if not part:
            continue
        lhs, eq, rhs = part.partition("=")
        if not eq:
            raise UsageError(f"bad assignment {part!r}")
        try:
            v = parse_target_value(rhs, len(caps))
        except ParseError as e:
            raise UsageError(f"{rhs!r}: {e}")
        lhs = lhs.strip()
        if lhs == "r":
            values = [v] * n
        elif lhs.startswith("r") and lhs[1:].isdigit() and 1 <= int(lhs[1:]) <= n:
            values[int(lhs[1:]) - 1] = v
        else:
            raise UsageError(f"unknown parameter {lhs!r}")
    if any(v is None for v in values):
        raise UsageError("every r_i needs a value")
    if caps:
        return SpecializationTarget.truncated(caps, values)
    return SpecializationTarget("integers", tuple(values))


def render_table(entries, basis, name="r") -> str:
    labels = [f"x{label(t)}" if t else "1" for t in basis]
    lines = []
    for i, row in enumerate(entries):
        for j in range(i, len(row)):
            terms = []
            for c, b in zip(row[j].coeffs, labels):
                if not c:
                    continue
                cs = format_coeff(c, name)
                if b == "1":
                    terms.append(cs if len(c.terms) == 1 else f"({cs})")
                elif c == 1:
                    terms.append(b)
                else:
                    terms.append(f"({cs})*{b}")
            lines.append(f"{labels[i]} * {labels[j]} = {' + '.join(terms) if terms else '0'}")
    return "\n".join(lines) + "\n"


def cmd_table(args):
    fan, order = load_fan(args.fan)
    sd = _order_for(fan, order, args)
    mode = Mode(args.mode)
    table = mult_table(Reducer(fan, sd, mode), jobs=args.jobs)
    if args.specialize:
        target = parse_target(args.specialize, fan.dim)
        try:
            rows = specialize(table, target)
        except SpecializationError as e:
            raise UsageError(str(e))
        if args.format == "text":
            _write(render_table(rows, table.basis, "t"))
        else:
            _write(dumps(specialized_table_to_json(rows, table.basis, target)))
        return 0
    if args.format == "text":
        _write(render_table(table.entries, table.basis))
    else:
        _write(dumps(table_to_json(table)))
    return 0


def cmd_betti(args):
    fan, order = load_fan(args.fan)
    sd = _order_for(fan, order, args)
    b = betti(sd, fan.dim)
    print(" ".join(str(x) for x in b))
    return 0


def cmd_check(args):
    fan, order = load_fan(args.fan)
    sd = _order_for(fan, order, args)
    modes = [Mode.ADDITIVE, Mode.MULTIPLICATIVE] if args.mode == "both" else [Mode(args.mode)]
    results = []
    for mode in modes:
        reducer = Reducer(fan, sd, mode)
        try:
            if mode is Mode.ADDITIVE:
                results.append(freeness_additive(fan, sd))
                results.append(agreement_additive(fan, sd, args.samples, args.seed, reducer))
            else:
                results.append(freeness_multiplicative(fan, sd, 2, args.seed))
                results.append(agreement_multiplicative(fan, sd, args.samples, args.seed,
                                                        reducer=reducer))
                results.append(random_u_membership(fan, sd, 20, args.seed, reducer))
        except FreenessViolation as e:
            reducer.mark_advisory()
            print(f"FAIL freeness ({mode.value}): {e}")
            return 1
        results.append(soundness(fan, sd, mode, reducer, args.seed))
        results.append(algebra_laws(fan, sd, mode, 50, args.seed, reducer))
        if mode is Mode.ADDITIVE:
            if sd.star_prime_ok:
                rep = duality_check(fan, sd, reducer)
                from .checks import SuiteResult
                r = SuiteResult(f"duality ({fan.name})", rep.ok, sd.m * sd.m,
                                rep.findings or [f"diagonal {rep.diagonal}"])
                results.append(r)
            else:
                print(f"SKIP duality: order does not satisfy (*')")
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


def cmd_catalog(args):
    fans = catalog.catalog()
    if args.name is None:
        for name in sorted(fans):
            f = fans[name]
            print(f"{name}: n={f.dim}, d={f.d}, m={f.m}")
        return 0
    if args.name not in fans:
        raise UsageError(f"unknown catalog fan {args.name!r}")
    _write(dumps(fan_to_json(fans[args.name])))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="toricbundle",
                                description="Cohomology and K-rings of toric bundles from fan data.")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for table fills")
    sub = p.add_subparsers(dest="command", required=True)

    def fan_cmd(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("fan", help="fan JSON file or catalog name")
        sp.add_argument("--seed", type=int, default=0)
        sp.set_defaults(func=func)
        return sp

    fan_cmd("validate", cmd_validate, "check smoothness and completeness")
    sp = fan_cmd("order", cmd_order, "find an order of the maximal cones")
    sp.add_argument("--require-star-prime", action="store_true")
    sp.add_argument("--exhaustive", action="store_true", help="enumerate all admissible orders")
    sp.add_argument("--node-limit", type=int, default=10 ** 6)
    sp.add_argument("--limit", type=int, default=0, help="print this many orders with --exhaustive")
    sp.add_argument("--json", action="store_true")
    for name, func, help_ in (("present", cmd_present, "print the relations"),
                              ("reduce", cmd_reduce, "normal form of a polynomial"),
                              ("table", cmd_table, "multiplication table of the basis")):
        sp = fan_cmd(name, func, help_)
        sp.add_argument("--mode", choices=[m.value for m in Mode], default="additive")
        if name == "reduce":
            sp.add_argument("--poly", required=True)
        if name in ("reduce", "table"):
            sp.add_argument("--format", choices=["json", "text"], default="json")
        if name == "table":
            sp.add_argument("--specialize", help='e.g. "r=0" or "t1^2: r1=3*t1"')
    fan_cmd("betti", cmd_betti, "even Betti numbers of the fibre")
    sp = fan_cmd("check", cmd_check, "run the oracle, duality and algebra-law suites")
    sp.add_argument("--mode", choices=["additive", "multiplicative", "both"], default="both")
    sp.add_argument("--samples", type=int, default=100)
    sp = sub.add_parser("catalog", help="list catalog fans or print one as JSON")
    sp.add_argument("name", nargs="?")
    sp.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (Finding, UnsupportedFanError, NoShellingError, ShellingInconclusive) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
