"""Command-line front end.

One process per command; computations dispatch to the library and results
come back as a deterministic report, either an aligned text table or
canonical JSON.  The exit code is the conjunction of every check in the
invocation: 0 only when everything asked for passed.

A soft size cap guards against accidentally huge computations (derived
limit complexes grow with the chain count of the poset); it counts matrix
entries the planned computation will allocate, approximately, and refuses
loudly rather than thrash.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any

from .cyclic_site import SupportSet, divisor_closure, support_of_divisors, totient
from .hom_ext import (
    dual_system,
    ext_via_resolution,
    hom_direct,
    hom_via_limit,
    lim_derived,
    sequential_lim1,
    tower_along_chain,
)
from .modules import regular_module, validate
from .normal_basis import classifier_report, normal_basis_report, unscaled_family
from .rep_ring import tau_level
from .resolution import nontrivial_ext_witness, verify_resolution
from .serialize import (
    dumps_canonical,
    load_module,
    morphism_to_json,
    results_to_json,
)

DEFAULT_SIZE_CAP = 10 ** 6


class SizeCapExceeded(RuntimeError):
    pass


def parse_support(spec: str) -> SupportSet:
    """divisors:N, upto:N, or an explicit comma list (must be divisor-closed)."""
    spec = spec.strip()
    if spec.startswith("divisors:"):
        return support_of_divisors(int(spec.split(":", 1)[1]))
    if spec.startswith("upto:"):
        return divisor_closure(list(range(1, int(spec.split(":", 1)[1]) + 1)))
    try:
        members = [int(tok) for tok in spec.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(f"malformed support spec {spec!r}") from None
    if not members:
        raise ValueError("empty support spec")
    return SupportSet(members)  # rejects non-divisor-closed lists


def _check_size_cap(estimated: int, cap: int, what: str) -> None:
    if estimated > cap:
        raise SizeCapExceeded(
            f"{what} would allocate about {estimated} matrix entries, over the "
            f"cap of {cap}; raise --size-cap to proceed deliberately")


class Report:
    """Named checks plus named dimension lists, rendered deterministically."""

    def __init__(self) -> None:
        self.checks: list[dict[str, Any]] = []
        self.values: dict[str, Any] = {}

    def check(self, name: str, passed: bool, dims: Any = None) -> None:
        entry: dict[str, Any] = {"name": name, "pass": bool(passed)}
        if dims is not None:
            entry["dims"] = dims
        self.checks.append(entry)

    def value(self, key: str, val: Any) -> None:
        self.values[key] = val

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def emit(self, fmt: str) -> str:
        if fmt == "json":
            return dumps_canonical({"checks": self.checks, "values": self.values,
                                    "ok": self.ok})
        width = max((len(c["name"]) for c in self.checks), default=0)
        lines = []
        for key in sorted(self.values):
            rendered = f"{self.values[key]}"
            if len(rendered) > 200:
                rendered = f"<{len(rendered)} chars; use --format json>"
            lines.append(f"{key}: {rendered}")
        for c in self.checks:
            status = "PASS" if c["pass"] else "FAIL"
            extra = f"  dims={c['dims']}" if "dims" in c else ""
            lines.append(f"[{status}] {c['name']:<{width}}{extra}")
        lines.append(f"overall: {'ok' if self.ok else 'FAILED'}")
        return "\n".join(lines)


def _cmd_validate(args, rep: Report) -> None:
    from .modules import validate_actions, validate_paths, validate_squares

    support = parse_support(args.support)
    x = load_module(args.source, support, args.prefer_file, args.seed)
    if args.parallel:
        with ThreadPoolExecutor() as pool:
            per_level = pool.map(lambda n: validate_actions(x, n), list(support))
        violations = [v for vs in per_level for v in vs]
        violations += validate_squares(x) + validate_paths(x)
    else:
        violations = validate(x)
    for v in violations:
        rep.check(f"violation: {v}", False)
    rep.check(f"module {args.source} valid over {list(support)}", not violations)


def _estimate_hom_entries(x, y) -> int:
    return sum((x.dim(n) * y.dim(n)) ** 2 for n in x.support)


def _cmd_hom(args, rep: Report) -> None:
    support = parse_support(args.support)
    x = load_module(args.source, support, args.prefer_file, args.seed)
    y = load_module(args.target or "regular", support, args.prefer_file, args.seed)
    _check_size_cap(_estimate_hom_entries(x, y), args.size_cap, "the morphism system")
    hs = hom_direct(x, y)
    rep.value("dim", hs.dimension)
    rep.value("results", results_to_json(
        [hs.dimension], [morphism_to_json(f) for f in hs.basis]))
    rep.check("morphism space computed", True, dims=[hs.dimension])
    if (args.target or "regular") == "regular":
        hl = hom_via_limit(x)
        rep.check("direct solve agrees with the inverse-limit route",
                  hl.dimension == hs.dimension,
                  dims=[hs.dimension, hl.dimension])


def _cmd_ext(args, rep: Report) -> None:
    support = parse_support(args.support)
    x = load_module(args.source, support, args.prefer_file, args.seed)
    target_name = args.target or "regular"
    y = load_module(target_name, support, args.prefer_file, args.seed)
    k = args.max_degree
    _check_size_cap(_estimate_hom_entries(x, y) * (k + 1), args.size_cap,
                    "the resolution computation")
    dims = ext_via_resolution(x, y, k)
    rep.value("dims", dims)
    rep.value("results", results_to_json(dims, []))
    rep.check("extension groups computed", True, dims=dims)
    if target_name == "regular":
        lims = lim_derived(dual_system(x), k).dims
        rep.check("resolution route agrees with derived limits",
                  lims == dims, dims=lims)


def _cmd_lim(args, rep: Report) -> None:
    support = parse_support(args.support)
    x = load_module(args.source, support, args.prefer_file, args.seed)
    d = dual_system(x)
    chains = 1
    for n in support:
        chains += len(support.multiples_of(n))
    _check_size_cap(chains ** (args.max_degree + 1), args.size_cap,
                    "the nerve complex")
    out = lim_derived(d, args.max_degree)
    rep.value("dims", out.dims)
    rep.value("results", results_to_json(
        out.dims, [[[str(v) for v in w] for w in ws] for ws in out.witnesses]))
    rep.check("derived limits computed", True, dims=out.dims)
    rep.check("differential squares to zero", out.complex.check_d_squared())


def _cmd_tau_ru(args, rep: Report) -> None:
    support = parse_support(args.support)
    levels = list(support)

    def level_dims(n: int) -> tuple[int, int]:
        return tau_level(n).dim, totient(n)

    if args.parallel:
        with ThreadPoolExecutor() as pool:
            results = dict(zip(levels, pool.map(level_dims, levels)))
    else:
        results = {n: level_dims(n) for n in levels}
    rep.value("dims", {str(n): results[n][0] for n in levels})
    rep.check("quotient dimension equals the totient at every level",
              all(d == t for d, t in results.values()))


def _cmd_normal_basis(args, rep: Report) -> None:
    support = parse_support(args.support)
    r = normal_basis_report(support)
    rep.value("ranks", {str(l.level): (l.dim if l.invertible else -1) for l in r.levels})
    rep.value("isomorphism", r.ok)
    if args.format == "json":
        # the full levelwise morphism; omitted from text output for readability
        rep.value("morphism", morphism_to_json(r.morphism))
    for l in r.levels:
        rep.check(f"level {l.level} invertible ({l.rank_method} rank)", l.invertible)
        rep.check(f"level {l.level} equivariant", l.equivariant)
    for s in r.squares:
        rep.check(f"naturality {s.source}->{s.target}", s.natural)
    if args.show_unscaled_failure:
        bad = classifier_report(unscaled_family(support))
        failing = [f"{s.source}->{s.target}" for s in bad.squares if not s.natural]
        rep.value("unscaled_failing_squares", failing)
        rep.check("unscaled family fails restriction compatibility", bool(failing))


def _cmd_resolution(args, rep: Report) -> None:
    support = parse_support(args.support)
    primes = [int(p) for p in (args.primes or "2,3").split(",")]
    r = verify_resolution(primes, args.max_degree, support)
    rep.value("sign_convention", r.convention)
    for c in r.checks:
        rep.check(c.name, c.passed)
    for n in range(1, args.max_degree):
        w, _, _ = nontrivial_ext_witness(n, primes, support)
        rep.check(f"degree {n} witness cocycle is nontrivial", w.nontrivial,
                  dims=[w.hom_below_dim])


def _cmd_report(args, rep: Report) -> None:
    support = parse_support(args.support)
    reg = regular_module(support)
    rep.check("regular module valid", not validate(reg))
    r = normal_basis_report(support)
    rep.check("normal basis isomorphism", r.ok)
    names = ["regular", "tauRU"] + [f"random:{i}" for i in range(3)]
    for name in names:
        x = load_module(name, support, seed=args.seed)
        hd = hom_direct(x, reg)
        hl = hom_via_limit(x)
        rep.check(f"hom oracle agreement for {name}", hd.dimension == hl.dimension,
                  dims=[hd.dimension, hl.dimension])
        k = min(args.max_degree, 2)
        dims = ext_via_resolution(x, reg, k)
        lims = lim_derived(dual_system(x), k).dims
        rep.check(f"ext/derived-limit agreement for {name}", dims == lims, dims=dims)
    top = max(support)
    chain = [1]
    from .cyclic_site import prime_factors
    rest = top
    for p in prime_factors(top):
        while rest % p == 0:
            chain.append(chain[-1] * p)
            rest //= p
    tower = tower_along_chain(dual_system(reg), chain)
    t = sequential_lim1(*tower)
    rep.check("dual regular tower has vanishing lim1",
              t.lim1_dim == 0 and t.mittag_leffler,
              dims=[t.lim_dim, t.lim1_dim])


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cycrep",
        description="Exact computations with modules over the cyclic-group site")
    sub = ap.add_subparsers(dest="verb", required=True)

    def common(p: argparse.ArgumentParser, source: bool = False, target: bool = False,
               degree: bool = False) -> None:
        p.add_argument("--support", required=True,
                       help="divisors:N | upto:N | comma list (divisor-closed)")
        if source:
            p.add_argument("--source", required=True,
                           help="built-in name (regular, tauRU, free:n, semifree:n, "
                                "atomic:n:d) or a module JSON file")
        if target:
            p.add_argument("--target", default=None, help="like --source; default regular")
        if degree:
            p.add_argument("--max-degree", type=int, default=3)
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized property batteries")
        p.add_argument("--parallel", action="store_true",
                       help="run independent per-level checks in a thread pool")
        p.add_argument("--prefer-file", action="store_true",
                       help="let a file path shadow a built-in module name")
        p.add_argument("--size-cap", type=int, default=DEFAULT_SIZE_CAP,
                       help="maximum matrix entries per computation")

    p = sub.add_parser("validate", help="check module invariants")
    common(p, source=True)
    p = sub.add_parser("hom", help="morphism space between two modules")
    common(p, source=True, target=True)
    p = sub.add_parser("ext", help="extension groups via a resolution")
    common(p, source=True, target=True, degree=True)
    p = sub.add_parser("lim", help="derived inverse limits of the dual system")
    common(p, source=True, degree=True)
    p = sub.add_parser("tau-ru", help="transfer-quotient dimensions")
    common(p)
    p = sub.add_parser("normal-basis", help="verify the normal-basis isomorphism")
    common(p)
    p.add_argument("--show-unscaled-failure", action="store_true",
                   help="also report where the unscaled family breaks")
    p = sub.add_parser("resolution", help="verify the prime-set resolution")
    common(p, degree=True)
    p.add_argument("--primes", default="2,3", help="comma list of ambient primes")
    p = sub.add_parser("report", help="run the standard battery over a support")
    common(p, degree=True)
    return ap


_DISPATCH = {
    "validate": _cmd_validate,
    "hom": _cmd_hom,
    "ext": _cmd_ext,
    "lim": _cmd_lim,
    "tau-ru": _cmd_tau_ru,
    "normal-basis": _cmd_normal_basis,
    "resolution": _cmd_resolution,
    "report": _cmd_report,
}


def run(argv: list[str]) -> tuple[int, str]:
    """Parse and execute; returns (exit code, rendered report)."""
    args = build_parser().parse_args(argv)
    rep = Report()
    try:
        _DISPATCH[args.verb](args, rep)
    except (ValueError, FileNotFoundError, SizeCapExceeded) as exc:
        rep.check(f"error: {exc}", False)
        return 1, rep.emit(args.format)
    return (0 if rep.ok else 1), rep.emit(args.format)


def main() -> None:
    code, text = run(sys.argv[1:])
    print(text)
    sys.exit(code)


if __name__ == "__main__":
    main()
