"""Command-line surface.

Three commands:

* ``semigroup <gens>`` -- invariants, classification, trace and residue of
  one numerical semigroup (``--matrix`` adds the structure-matrix block
  for non-symmetric 3-generated input);
* ``scan shift|minmult|arithmetic|enumerate`` -- the batch sweeps;
* ``algebra hibi|sqvero|segre|veronese`` -- the poset and monomial
  classifiers.

Every command renders a Report: inputs echoed, results, and a list of
assertions.  Hard assertions flip the exit code to 3 when they fail;
report-only probes (open questions) never affect it.  Input and
precondition errors exit 2.  ``--json`` prints the machine-readable form
(schema "trace-toolkit/1"): canonical key order, integers, booleans,
strings and lists only, so parse-and-redump is byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field, is_dataclass, asdict

from . import families, ideals, monomial, poset, threegen
from .errors import ConsistencyError, InvalidParams, TraceToolkitError
from .semigroup import from_generators, normalize_generators

SCHEMA = "trace-toolkit/1"


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict = field(default_factory=dict)
    assertions: list = field(default_factory=list)

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        self.assertions.append(
            {"name": name, "status": "pass" if ok else "fail", "detail": detail}
        )

    def probe(self, name: str, detail: str = "") -> None:
        self.assertions.append({"name": name, "status": "report-only", "detail": detail})

    @property
    def failed(self) -> bool:
        return any(a["status"] == "fail" for a in self.assertions)

    def as_dict(self) -> dict:
        return _plain({
            "schema": SCHEMA,
            "command": self.command,
            "input": self.inputs,
            "results": self.results,
            "assertions": self.assertions,
        })

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def render_text(self) -> str:
        lines = [f"== {self.command} =="]
        for key, value in self.inputs.items():
            lines.append(f"input {key}: {_show(value)}")
        lines.extend(_render_block(self.results, ""))
        for a in self.assertions:
            mark = {"pass": "PASS", "fail": "FAIL", "report-only": "NOTE"}[a["status"]]
            detail = f"  {a['detail']}" if a["detail"] else ""
            lines.append(f"[{mark}] {a['name']}{detail}")
        return "\n".join(lines)


def _plain(value):
    if is_dataclass(value) and not isinstance(value, type):
        return _plain(asdict(value))
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, bool) or isinstance(value, int) or isinstance(value, str):
        return value
    if value is None:
        return None
    raise InvalidParams(f"value {value!r} is not JSON-representable")


def _show(value):
    value = _plain(value)
    return json.dumps(value) if isinstance(value, (list, dict)) else str(value)


def _render_block(data: dict, indent: str) -> list[str]:
    lines = []
    for key, value in data.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_render_block(value, indent + "  "))
        else:
            lines.append(f"{indent}{key}: {_show(value)}")
    return lines


def _parse_generators(tokens) -> list[int]:
    raw = " ".join(tokens).replace(",", " ").split()
    if not raw:
        raise InvalidParams("no generators given")
    try:
        return [int(t) for t in raw]
    except ValueError as exc:
        raise InvalidParams(f"generators must be integers: {exc}") from exc


# -- semigroup ----------------------------------------------------------------


def cmd_semigroup(args) -> Report:
    gens = _parse_generators(args.generators)
    report = Report("semigroup", {"generators": gens})
    minimal, removed = normalize_generators(gens)
    H = from_generators(gens)
    inv = H.invariants()
    cls = H.classify()
    summary = ideals.canonical_trace(H)
    ng = ideals.ng_report(H)
    report.results["minimal_generators"] = list(minimal)
    if removed:
        report.results["removed_redundant_generators"] = list(removed)
    report.results["invariants"] = {
        "frobenius": inv.frobenius,
        "genus": inv.genus,
        "n_of_h": inv.n_of_h,
        "conductor": inv.conductor_number,
        "multiplicity": inv.multiplicity,
        "embedding_dimension": inv.embedding_dimension,
        "minimal_multiplicity": inv.has_minimal_multiplicity,
    }
    report.results["pseudo_frobenius"] = list(H.pseudo_frobenius)
    report.results["type"] = H.type
    report.results["classification"] = {
        "symmetric": cls.symmetric,
        "pseudo_symmetric": cls.pseudo_symmetric,
        "almost_symmetric": cls.almost_symmetric,
    }
    report.results["trace_minimal_generators"] = list(summary.trace.minimal_generators())
    report.results["residue"] = summary.residue
    report.results["nearly_gorenstein"] = summary.nearly_gorenstein
    report.results["trace_is_conductor"] = summary.trace == ideals.conductor_ideal(H)
    report.check("residue <= n(H)", ng.bound_n_ok, f"{ng.residue} <= {ng.n_of_h}")
    report.check("conductor <= trace <= H", ng.containment_ok)
    report.probe(
        "residue <= genus - n(H) (open question)",
        f"{ng.residue} <= {ng.genus - ng.n_of_h}: {ng.question_gn_ok}",
    )
    if args.matrix:
        if H.embedding_dimension != 3:
            raise InvalidParams("--matrix needs a 3-generated semigroup")
        if cls.symmetric:
            report.results["structure_matrix"] = "undefined (symmetric semigroup)"
        else:
            mi = threegen.matrix_invariants(H)
            report.results["structure_matrix"] = {
                "a": list(mi.matrix.a),
                "b": list(mi.matrix.b),
                "c": list(mi.matrix.c),
                "residue_formula": mi.residue_formula,
                "frobenius_from_matrix": mi.frobenius_from_matrix,
            }
            report.check("matrix residue == brute residue", mi.residue_ok)
            report.check("matrix frobenius == brute frobenius", mi.frobenius_ok)
            report.check("genus identity", mi.genus_identity_ok)
            report.check("residue <= genus - n(H) (3-generated)", mi.gn_bound_ok)
            report.check(
                "conductor-trace pattern <3, 3a+1, 3a+2>",
                threegen.trace_conductor_classifier(H)
                == report.results["trace_is_conductor"],
            )
    return report


# -- scans ----------------------------------------------------------------------


def cmd_scan(args) -> Report:
    threads = args.threads or os.cpu_count() or 1
    if args.kind == "shift":
        if args.a is None or args.b is None:
            raise InvalidParams("scan shift needs --a and --b")
        rep = threegen.shift_analysis(args.a, args.b, periods=args.periods)
        report = Report("scan shift", {"a": args.a, "b": args.b, "periods": args.periods})
        report.results["gcd"] = rep.d
        report.results["k"] = rep.k
        report.results["symmetry_period"] = rep.period
        report.results["window"] = [rep.first_j, rep.last_j]
        report.results["shifts"] = [
            {"j": r.j, "reduced": list(r.reduced_generators),
             "residue": r.residue, "symmetric": r.symmetric}
            for r in rep.records
        ]
        report.check("residue periodicity", rep.periodicity_ok)
        report.check("symmetric iff period divides shift", rep.symmetry_period_ok)
        report.check("residue divisibility", rep.divisibility_ok)
        report.check("residue bound 8b^3/27D^3", rep.bound_ok)
        return report

    if args.kind == "minmult":
        fmax = _require_fmax(args)
        sweeps = families.minimal_multiplicity_scan(
            fmax, check_pf=args.check_pf, threads=threads
        )
        count = sum(s.count for s in sweeps)
        ng = sum(s.nearly_gorenstein for s in sweeps)
        asym = sum(s.almost_symmetric for s in sweeps)
        mism = [g for s in sweeps for g in s.mismatches]
        pf_bad = [g for s in sweeps for g in s.pf_mismatches]
        report = Report("scan minmult", {"frobenius_max": fmax})
        report.results["semigroups"] = count
        report.results["nearly_gorenstein"] = ng
        report.results["almost_symmetric"] = asym
        report.results["by_multiplicity"] = [
            {"multiplicity": s.multiplicity, "count": s.count,
             "nearly_gorenstein": s.nearly_gorenstein}
            for s in sweeps if s.count
        ]
        if mism:
            report.results["mismatches"] = [list(g) for g in mism[:25]]
        report.check("nearly Gorenstein <=> almost symmetric", not mism,
                     f"{count} semigroups, {len(mism)} mismatches")
        if args.check_pf:
            report.check("PF == {n_i - multiplicity}", not pf_bad,
                         f"{len(pf_bad)} mismatches")
        return report

    if args.kind == "arithmetic":
        if args.a_max is None:
            raise InvalidParams("scan arithmetic needs --a-max")
        from math import gcd as _gcd

        count = 0
        symmetric = almost = 0
        records = []
        report = Report("scan arithmetic",
                        {"a_max": args.a_max, "d_max": args.d_max})
        for a in range(3, args.a_max + 1):
            for d in range(1, args.d_max + 1):
                if _gcd(a, d) != 1:
                    continue
                for e in range(3, a + 1):
                    fam = families.arithmetic_family(a, d, e)
                    count += 1
                    symmetric += fam.symmetric
                    almost += fam.almost_symmetric
                    records.append({
                        "a": a, "d": d, "e": e, "frobenius": fam.frobenius,
                        "type": fam.tau, "symmetric": fam.symmetric,
                        "almost_symmetric": fam.almost_symmetric,
                    })
        report.results["instances"] = count
        report.results["symmetric"] = symmetric
        report.results["almost_symmetric"] = almost
        if count <= 200:
            report.results["families"] = records
        report.check("all nearly Gorenstein (with formula cross-checks)", True,
                     f"{count} instances")
        return report

    if args.kind == "enumerate":
        fmax = _require_fmax(args)
        agg = families.enumerate_scan(fmax, check_divisorial=args.divisorial,
                                      threads=threads)
        report = Report("scan enumerate", {"frobenius_max": fmax})
        report.results["semigroups"] = agg.count
        report.results["max_residue"] = agg.max_residue
        report.results["symmetric"] = agg.symmetric
        report.results["nearly_gorenstein"] = agg.nearly_gorenstein
        report.results["trace_equals_conductor"] = agg.trace_equals_conductor
        report.results["gn_question_violations"] = agg.gn_violations
        if agg.gn_examples:
            report.results["gn_question_examples"] = [list(g) for g in agg.gn_examples]
        report.check("residue <= n(H)", agg.bound_violations == 0,
                     f"{agg.bound_violations} violations")
        report.check("conductor <= trace <= H (<= M when not symmetric)",
                     agg.containment_violations == 0)
        report.probe("residue <= genus - n(H) (open question)",
                     f"{agg.gn_violations} violations among {agg.count} semigroups")
        if args.divisorial:
            report.probe("canonical ideal equals its double dual",
                         f"{agg.divisorial_violations} violations")
        return report

    raise InvalidParams(f"unknown scan kind {args.kind!r}")


def _require_fmax(args) -> int:
    if args.frobenius_max is None:
        raise InvalidParams(f"scan {args.kind} needs --frobenius-max")
    if args.frobenius_max < 1:
        raise InvalidParams("--frobenius-max must be >= 1")
    return args.frobenius_max


# -- algebra ---------------------------------------------------------------------


def cmd_algebra(args) -> Report:
    if args.kind == "hibi":
        with open(args.params[0], "r", encoding="utf-8") as handle:
            text = handle.read()
        p = poset.parse_poset(text)
        structure = poset.poset_structure(p)
        cls = poset.hibi_classify(p)
        report = Report("algebra hibi", {"file": args.params[0]})
        report.results["elements"] = len(p.elements)
        if p.removed_covers:
            report.results["removed_implied_covers"] = [list(c) for c in p.removed_covers]
        report.results["components"] = [list(c) for c in structure.components]
        report.results["rank"] = structure.rank
        report.results["component_ranks"] = list(structure.component_ranks)
        report.results["pure"] = structure.is_pure
        report.results["gorenstein"] = cls.gorenstein
        report.results["nearly_gorenstein"] = cls.nearly_gorenstein
        report.results["a_invariant"] = cls.a_invariant
        report.check("gorenstein implies nearly gorenstein",
                     (not cls.gorenstein) or cls.nearly_gorenstein)
        report.check("nearly gorenstein implies pure intervals",
                     (not cls.nearly_gorenstein) or structure.interval_purity_ok)
        return report

    if args.kind == "sqvero":
        n, d = _int_params(args.params, 2, "algebra sqvero <n> <d>")
        ring = monomial.SquarefreeVeronese(n, d)
        cls = ring.classify()
        report = Report("algebra sqvero", {"n": n, "d": d})
        report.results["gorenstein"] = cls.gorenstein
        report.results["nearly_gorenstein"] = cls.nearly_gorenstein
        if n > 2 * d >= 4:
            anti = ring.anticanonical()
            pre, post = ring.omega_generator_counts()
            report.results["canonical_generators"] = post
            report.results["canonical_generators_preprune"] = pre
            report.results["anticanonical_squarefree"] = len(anti.squarefree_part)
            report.results["p_set"] = [list(v) for v in anti.p_set_trimmed()]
            report.check("P set empty iff n = 2d+1",
                         (not anti.p_set) == (n == 2 * d + 1))
        if cls.trace_gap_witness is not None:
            w = cls.trace_gap_witness
            report.results["trace_gap"] = {
                "min_product_degree": w.min_product_degree,
                "required_degree": w.required_degree,
                "generator_degree": w.generator_degree,
                "products_checked": w.products_checked,
            }
            report.check("trace misses the degree-1 algebra generators", w.ok,
                         f"min product degree {w.min_product_degree} "
                         f">= {w.required_degree} > {w.generator_degree}")
        return report

    if args.kind == "segre":
        r, s = _int_params(args.params, 2, "algebra segre <r> <s>")
        result = monomial.segre_trace(r, s)
        report = Report("algebra segre", {"r": r, "s": s})
        report.results["trace_power"] = result.trace_equals_power
        report.results["colength"] = result.colength
        report.results["nearly_gorenstein"] = result.trace_equals_power <= 1
        report.results["gorenstein"] = result.trace_equals_power == 0
        report.check("trace == m^|r-s| on the degree window", result.verified)
        return report

    if args.kind == "veronese":
        n, d, j = _int_params(args.params, 3, "algebra veronese <n> <d> <j>")
        ok = monomial.veronese_submodule_witness(n, d, j)
        report = Report("algebra veronese", {"n": n, "d": d, "j": j})
        report.results["witness"] = ok
        report.check("submodule trace contains the degree-d maximal ideal", ok)
        return report

    raise InvalidParams(f"unknown algebra kind {args.kind!r}")


def _int_params(params, count, usage):
    if len(params) != count:
        raise InvalidParams(f"usage: {usage}")
    try:
        return tuple(int(p) for p in params)
    except ValueError as exc:
        raise InvalidParams(f"usage: {usage} (integers)") from exc


# -- entry point ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trace-toolkit",
        description="Canonical trace ideals, residues and nearly-Gorenstein "
                    "classification for numerical semigroups, Hibi posets and "
                    "monomial algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_semi = sub.add_parser("semigroup", help="invariants and trace of one semigroup")
    p_semi.add_argument("generators", nargs="+",
                        help="generators, comma- or space-separated")
    p_semi.add_argument("--matrix", action="store_true",
                        help="add the structure-matrix block (3-generated only)")
    p_semi.add_argument("--json", action="store_true")

    p_scan = sub.add_parser("scan", help="batch sweeps over semigroup families")
    p_scan.add_argument("kind", choices=["shift", "minmult", "arithmetic", "enumerate"])
    p_scan.add_argument("--a", type=int)
    p_scan.add_argument("--b", type=int)
    p_scan.add_argument("--periods", type=int, default=5)
    p_scan.add_argument("--frobenius-max", type=int)
    p_scan.add_argument("--a-max", type=int)
    p_scan.add_argument("--d-max", type=int, default=10)
    p_scan.add_argument("--check-pf", action="store_true",
                        help="minmult: also verify the PF formula per semigroup")
    p_scan.add_argument("--divisorial", action="store_true",
                        help="enumerate: probe the double-dual identity")
    p_scan.add_argument("--threads", type=int, default=None,
                        help="worker processes (default: available parallelism); "
                             "shift and arithmetic scans are sub-second and run in-process")
    p_scan.add_argument("--json", action="store_true")

    p_alg = sub.add_parser("algebra", help="Hibi poset and monomial-algebra classifiers")
    p_alg.add_argument("kind", choices=["hibi", "sqvero", "segre", "veronese"])
    p_alg.add_argument("params", nargs="+",
                       help="hibi: poset file; sqvero: n d; segre: r s; veronese: n d j")
    p_alg.add_argument("--json", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "semigroup":
            report = cmd_semigroup(args)
        elif args.command == "scan":
            report = cmd_scan(args)
        else:
            report = cmd_algebra(args)
    except ConsistencyError as exc:
        print(f"assertion failure: {exc}", file=sys.stderr)
        return 3
    except TraceToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.to_json() if args.json else report.render_text())
    return 3 if report.failed else 0


if __name__ == "__main__":
    sys.exit(main())
