"""Command line interface: ``gqm <subcommand> [options]``.

Every subcommand builds a report document (inputs, results, checks) and
renders it as aligned text, JSON, or CSV.  Rationals are always written as
``"num/den"`` strings.  The exit status is 0 when every check passes, 1 when
one fails, and 2 for bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__, composite, fun, lhv, measurement, projective, qcount, verify
from .errors import BadTable, GQMError, InvalidField
from .gf import field_new, prime_power

PRIME_POWER_MSG = "q must be a prime power (q=1: use `fun`)"


class UsageError(Exception):
    pass


def rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# -- report document ---------------------------------------------------------------

class Report:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.results: dict = {}
        self.tables: list[tuple[str, list[str], list[list[str]]]] = []
        self.checks: list[verify.Check] = []

    def table(self, title, headers, rows):
        rows = [[str(c) for c in r] for r in rows]
        self.tables.append((title, list(headers), rows))
        return rows

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "tool": "gqm",
            "version": __version__,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks
            ],
            "all_passed": self.ok,
        }

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            for i, (title, headers, rows) in enumerate(self.tables):
                if i:
                    buf.write("\n")
                w.writerow(headers)
                w.writerows(rows)
            if self.checks:
                if self.tables:
                    buf.write("\n")
                w.writerow(["check", "passed", "detail"])
                for c in self.checks:
                    w.writerow([c.name, "PASS" if c.passed else "FAIL", c.detail])
            return buf.getvalue()
        return self._text()

    def _text(self) -> str:
        lines = [f"gqm {__version__}  {self.command}  "
                 + " ".join(f"{k}={v}" for k, v in self.inputs.items())]
        for title, headers, rows in self.tables:
            lines.append("")
            lines.append(title)
            widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
                      for i, h in enumerate(headers)]
            lines.append("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip())
            lines.append("  ".join("-" * w for w in widths))
            for r in rows:
                lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        if self.checks:
            lines.append("")
            for c in self.checks:
                tail = f"  ({c.detail})" if c.detail else ""
                lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.name}{tail}")
        return "\n".join(lines) + "\n"


# -- argument helpers ----------------------------------------------------------------

def _field_from_args(args):
    q, p, n = getattr(args, "q", None), getattr(args, "p", None), getattr(args, "n", None)
    if q is None and p is None:
        raise UsageError("give --q, or --p and --n")
    if q is not None:
        try:
            qp, qn = prime_power(q)
        except InvalidField:
            raise UsageError(PRIME_POWER_MSG) from None
        if (p is not None and p != qp) or (n is not None and n != qn):
            raise UsageError(f"--q {q} is {qp}^{qn}, which conflicts with --p/--n")
        p, n = qp, qn
    n = 1 if n is None else n
    try:
        return field_new(p, n)
    except GQMError as exc:
        raise UsageError(str(exc)) from None


def _add_field_args(sp):
    sp.add_argument("--q", type=int, help="field order (a prime power)")
    sp.add_argument("--p", type=int, help="characteristic")
    sp.add_argument("--n", type=int, help="extension degree (with --p)")


# -- subcommands ----------------------------------------------------------------------

def cmd_field(args) -> Report:
    ctx = _field_from_args(args)
    rep = Report("field", {"p": ctx.p, "n": ctx.n, "q": ctx.q})
    rep.results = {
        "p": ctx.p,
        "n": ctx.n,
        "q": ctx.q,
        "modulus": list(ctx.modulus),
        "modulus_str": ctx.modulus_str(),
        "generator": ctx.generator.serialize(),
        "elements": [e.serialize() for e in ctx],
    }
    rep.table(
        f"GF({ctx.q}), modulus {ctx.modulus_str()}, generator a = {ctx.generator}",
        ["index", "element", "serialized", "log_a"],
        [[e.index, e, e.serialize(), ctx.log(e) if e else "-"] for e in ctx],
    )
    rep.checks = verify.field_checks(ctx)
    return rep


def cmd_counts(args) -> Report:
    ctx = _field_from_args(args)
    N, q = args.N, ctx.q
    rep = Report("counts", {"q": q, "N": N})
    rows = []
    res = {"q_int": qcount.q_int(N, q), "q_factorial": qcount.q_factorial(N, q), "subspaces": {}}
    for k in range(-1, N):
        c = qcount.subspace_count(N, k, q)
        res["subspaces"][str(k)] = {"count": c, "points_each": qcount.points_per_subspace(k, q)}
        rows.append([k, c, qcount.points_per_subspace(k, q)])
    rep.results = res
    rep.table(f"PG({N - 1},{q}): [N]_q = {res['q_int']}, [N]_q! = {res['q_factorial']}",
              ["k", "k-subspaces", "points each"], rows)
    if args.brute:
        rep.checks = verify.subspace_oracle_checks(q, N)
    if q ** N <= 10_000:
        n = len(projective.enumerate_points(N, ctx))
        rep.checks.append(verify.Check(f"|PG({N - 1},q)| by enumeration = [N]_q", n == res["q_int"], str(n)))
    return rep


def cmd_states(args) -> Report:
    ctx = _field_from_args(args)
    N = args.N
    rep = Report("states", {"q": ctx.q, "N": N})
    pts = projective.enumerate_points(N, ctx)
    rep.results["points"] = [[e.serialize() for e in v] for v in pts]
    rep.table(f"PG({N - 1},{ctx.q}): {len(pts)} points", ["#", "vector"],
              [[i, v] for i, v in enumerate(pts)])
    rep.checks.append(verify.Check("point count = [N]_q", len(pts) == qcount.q_int(N, ctx.q), str(len(pts))))
    if N == 2:
        labels = list(projective.spin_labels(ctx))
        kets = [projective.ket(r, ctx) for r in labels]
        bras = [projective.bra(r, ctx) for r in labels]
        rep.results["kets"] = {str(r): [e.serialize() for e in k] for r, k in zip(labels, kets)}
        rep.results["bras"] = {str(r): [e.serialize() for e in b] for r, b in zip(labels, bras)}
        rep.table(f"spin model, a = {ctx.generator}", ["r", "|r>", "<r|"],
                  [[r, k, b] for r, k, b in zip(labels, kets, bras)])
        ok = all(bool(projective.bracket(b, k)) == (r != s)
                 for r, b in zip(labels, bras) for s, k in zip(labels, kets))
        rep.checks.append(verify.Check("<r|s> = 0 iff r = s", ok))
    return rep


def cmd_probs(args) -> Report:
    ctx = _field_from_args(args)
    r, s = args.r, args.s
    rep = Report("probs", {"q": ctx.q, "r": r, "s": s})
    try:
        A = measurement.spin_observable(r, s, ctx)
    except GQMError as exc:
        raise UsageError(str(exc)) from None
    plus, minus = A.duals
    rows, res = [], []
    ok = True
    for t in projective.spin_labels(ctx):
        psi = projective.ket(t, ctx)
        pp = measurement.probability(plus, A, psi)
        pm = measurement.probability(minus, A, psi)
        ev = measurement.expectation(A, psi)
        want = {r: (0, 1), s: (1, 0)}.get(t, (Fraction(1, 2), Fraction(1, 2)))
        ok &= (pp, pm) == want
        rows.append([t, rat(pp), rat(pm), rat(ev)])
        res.append({"state": t, "p_plus": rat(pp), "p_minus": rat(pm), "expectation": rat(ev)})
    rep.results = {"observable": A.name, "rows": res}
    rep.table(f"{A.name} on each |t>", ["t", "P(+1)", "P(-1)", "<A>"], rows)
    rep.checks.append(verify.Check("eigenstates |s> (+1), |r> (-1); 1/2 elsewhere", ok))
    return rep


def cmd_table1(args) -> Report:
    ctx = _field_from_args(args)
    rep = Report("table1", {"q": ctx.q})
    rows, res = [], []
    for row in composite.table1(ctx):
        if isinstance(row, composite.RowSkipped):
            rows.append([row.label, "skipped", "", "", "", ""])
            res.append({"observable": row.label, "skipped": row.reason})
        else:
            cells = [rat(p) for p in row.probabilities] + [rat(row.ev)]
            rows.append([row.label] + cells)
            res.append(dict(zip(["observable", "pp", "pm", "mp", "mm", "ev"], [row.label] + cells)))
    rep.results = {"state": str(composite.singlet(0, 1, ctx)), "rows": res}
    rep.table(f"product observables on the singlet, q = {ctx.q}",
              ["observable", "++", "+-", "-+", "--", "E.V."], rows)
    rep.checks = verify.table1_checks(ctx)
    return rep


def cmd_chsh(args) -> Report:
    ctx = _field_from_args(args)
    rep = Report("chsh", {"q": ctx.q, "all_states": args.all_states})
    if args.all_states:
        _, _, states = composite.enumerate_two_spin_states(ctx)
    else:
        states = [composite.singlet(0, 1, ctx)]
    res = composite.chsh_max(ctx, states)
    names = [o.name for o in res.witness]
    rep.results = {
        "max_abs_chsh": rat(res.value),
        "witness": dict(zip(["A", "a", "B", "b"], names)),
        "witness_value": rat(res.signed_value),
        "witness_state": [e.serialize() for e in res.state.entries],
        "states_checked": res.states_checked,
        "observables_per_side": res.observables_per_side,
    }
    rep.table("CHSH maximum", ["max |<A,a;B,b>|", "A", "a", "B", "b", "value", "state"],
              [[rat(res.value), *names, rat(res.signed_value), res.state]])
    rep.checks.append(verify.Check("max |CHSH| = 2", res.value == 2, rat(res.value)))
    return rep


def _strategy_str(strat):
    a, b = strat
    sym = {1: "+", -1: "-"}
    return "".join(sym[x] for x in a) + "|" + "".join(sym[x] for x in b)


def cmd_lhv(args) -> Report:
    if args.from_gqm:
        ctx = _field_from_args(args)
        if args.state != "singlet":
            raise UsageError("--state must be 'singlet'")
        table = lhv.gqm_joint_table(ctx, composite.singlet(0, 1, ctx))
        inputs = {"q": ctx.q, "state": "singlet", "method": args.method}
    else:
        if not args.table:
            raise UsageError("give a joint table file or --from-gqm")
        try:
            with open(args.table) as fh:
                table = lhv.JointTable.from_json(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read {args.table}: {exc}") from None
        except BadTable as exc:
            raise UsageError(f"malformed joint table: {exc}") from None
        inputs = {"file": args.table, "method": args.method}
    s = table.scenario
    v = lhv.lhv_feasible(s, table, method=args.method)
    rep = Report("lhv", inputs)
    res = {"m1": s.m1, "m2": s.m2, "feasible": v.feasible, "method": v.method, "pivots": v.pivots}
    if v.feasible:
        res["weights"] = {_strategy_str(k): rat(w) for k, w in v.weights.items()}
        rep.table("local model (strategy: party-1 outcomes | party-2 outcomes)", ["strategy", "weight"],
                  [[k, w] for k, w in res["weights"].items()])
        rep.checks.append(verify.Check("weights reproduce the table", lhv.reproduces(s, table, v.weights)))
    else:
        res["certificate"] = {
            f"{i},{j}": {lhv.KEY_OF[o]: rat(c) for o, c in row.items()}
            for (i, j), row in v.certificate.items()
        }
        res["table_value"] = rat(v.table_value)
        res["strategy_max"] = rat(v.strategy_max)
        rep.table("separating functional", ["pair", "pp", "pm", "mp", "mm"],
                  [[k, *row.values()] for k, row in res["certificate"].items()])
        value, top = lhv.certificate_gap(s, table, v.certificate)
        rep.checks.append(verify.Check("certificate separates the table", value > top,
                                       f"{rat(value)} > {rat(top)}"))
    if args.from_gqm:
        rep.checks.append(verify.Check("singlet table has no local model", not v.feasible))
    rep.results = res
    return rep


def cmd_fun(args) -> Report:
    N = args.N
    if N < 2:
        raise UsageError("--n must be at least 2")
    rep = Report("fun", {"N": N})
    geom = fun.pg_n_1(N)
    autos = fun.f1_automorphisms(N) if N <= fun.MAX_AUTOMORPHISM_N else None
    rep.results = {
        "points": list(geom.points),
        "subspaces": {str(k): sorted("".join(sorted(s)) for s in v) for k, v in geom.subspaces.items()},
        "automorphism_group_order": len(autos) if autos is not None else None,
    }
    rep.table(f"PG({N - 1},1)", ["k", "count", "subspaces"],
              [[k, geom.count(k), " ".join("{" + ",".join(sorted(s)) + "}" for s in v)]
               for k, v in geom.subspaces.items()])
    m = fun.q1_spin_model()
    A = m.observables["A"]
    rep.table("q=1 spin model", ["state", "vector", "<A>"],
              [[k, v, rat(A.expectation(v))] for k, v in m.states.items()])
    t = fun.q1_two_spin_model()
    rows = []
    for label, psi in t.states.items():
        o = t.observable.certain_outcome(psi)
        rows.append([label, psi, "" if o is None else f"({o[0]:+d},{o[1]:+d})"])
    rep.table("q=1 two-spin model, observable AA", ["state", "vector", "certain outcome"], rows)
    rep.results["q1_spin"] = {k: rat(A.expectation(v)) for k, v in m.states.items()}
    rep.results["q1_two_spin"] = {"states": len(t.states), "entangled": len(t.entangled),
                                  "chsh_bound": rat(t.chsh_bound)}
    rep.checks = verify.fun_checks(max_N=N)
    return rep


def cmd_verify_all(args) -> Report:
    ctx = _field_from_args(args)
    q = ctx.q
    rep = Report("verify-all", {"q": q})
    checks = verify.field_checks(ctx)
    checks += verify.count_checks(ctx)
    if q <= 3:
        checks += verify.subspace_oracle_checks(q)
    checks += verify.abs_map_checks(ctx)
    checks += verify.spin_probability_checks(ctx)
    if q <= 3:
        checks += verify.factorization_checks(ctx)
    checks += verify.singlet_bracket_checks(ctx)
    checks += verify.table1_checks(ctx)
    checks += verify.chsh_checks(ctx, all_states=q <= 4)
    if q <= 3:
        checks += verify.lhv_checks(ctx)
    checks += verify.fun_checks()
    rep.checks = checks
    rep.results = {"checks_run": len(checks), "failed": sum(not c.passed for c in checks)}
    return rep


COMMANDS = {
    "field": cmd_field,
    "counts": cmd_counts,
    "states": cmd_states,
    "probs": cmd_probs,
    "table1": cmd_table1,
    "chsh": cmd_chsh,
    "lhv": cmd_lhv,
    "fun": cmd_fun,
    "verify-all": cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gqm", description="Galois field quantum mechanics and its q=1 limit")
    parser.add_argument("--version", action="version", version=f"gqm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
        return sp

    sp = add("field", "construct GF(q) and list its elements")
    _add_field_args(sp)

    sp = add("counts", "q-analog subspace counts of PG(N-1,q)")
    _add_field_args(sp)
    sp.add_argument("--N", type=int, default=2)
    sp.add_argument("--brute", action="store_true", help="cross-check with subspace enumeration")

    sp = add("states", "points of PG(N-1,q) and the spin-model kets and bras")
    _add_field_args(sp)
    sp.add_argument("--N", type=int, default=2)

    sp = add("probs", "single-spin probabilities of A_rs")
    _add_field_args(sp)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--s", type=int, default=0)

    sp = add("table1", "product-observable probabilities on the singlet")
    _add_field_args(sp)

    sp = add("chsh", "maximum CHSH value")
    _add_field_args(sp)
    sp.add_argument("--all-states", action="store_true", help="sweep every entangled state")

    sp = add("lhv", "local hidden variable feasibility of a joint table")
    sp.add_argument("table", nargs="?", help="JSON joint table file")
    sp.add_argument("--from-gqm", action="store_true", help="use the GQM singlet table")
    _add_field_args(sp)
    sp.add_argument("--state", default="singlet")
    sp.add_argument("--method", choices=("auto", "simplex"), default="auto")

    sp = add("fun", "the q=1 limit over F1")
    sp.add_argument("--n", dest="N", type=int, default=3, help="number of points N")

    sp = add("verify-all", "run every reproduction check for one q")
    _add_field_args(sp)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rep = COMMANDS[args.command](args)
    except UsageError as exc:
        err.write(f"gqm {args.command}: {exc}\n")
        return 2
    out.write(rep.render(args.format))
    return 0 if rep.ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
