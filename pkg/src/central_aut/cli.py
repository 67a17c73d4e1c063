"""Command-line entry point.

Exit codes: 0 every check passed, 1 a check failed, 2 invalid
configuration, 3 a search exceeded its size guard.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass

import numpy as np

from .construction import (
    AssumptionViolated,
    FMatrix,
    build_f_matrix,
    check_companion_properties,
    check_f_properties,
    report_passed,
    report_to_json,
)
from .gf import PolyOverF, PrimeField
from .linalg import GuardExceeded
from .pgroup import (
    DEFAULT_GROUP_GUARD,
    build_presentation,
    element_to_json,
    inverse_image_obstruction,
    is_central,
    multiply,
    structure_report,
)
from .stabilizer import (
    DEFAULT_GUARD,
    StabResult,
    commuting_endomorphisms,
    stabilizer_bruteforce,
    stabilizer_structured,
    verify_proof_steps,
)

DEFAULT_SEED = 20140708
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    p: int = 2
    n: int = 3
    b: list[int] | None = None
    c: list[int] | None = None
    poly: list[int] | None = None
    force: bool = False
    seed: int = DEFAULT_SEED
    output: str = "text"
    timing: bool = True

    def build(self) -> FMatrix:
        try:
            field = PrimeField(self.p)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        m = None
        if self.poly is not None:
            m = PolyOverF(field, tuple(self.poly))
        try:
            return build_f_matrix(field, self.n, self.b, self.c, m)
        except (AssumptionViolated, ValueError) as exc:
            raise UsageError(str(exc)) from exc


def _int_list(text: str) -> list[int]:
    text = text.strip()
    try:
        if text.startswith("["):
            vals = json.loads(text)
        else:
            vals = [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from exc
    if not all(isinstance(v, int) for v in vals):
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}")
    return vals


def _fmt_matrix(M) -> str:
    return "\n".join("  " + " ".join(str(int(a)) for a in row) for row in np.asarray(M))


class Emitter:
    """Collects text lines or a JSON document, depending on the output mode."""

    def __init__(self, cfg: RunConfig, out):
        self.cfg = cfg
        self.out = out
        self.doc: dict = {}

    @property
    def json(self) -> bool:
        return self.cfg.output == "json"

    def text(self, *lines: str):
        if not self.json:
            for ln in lines:
                print(ln, file=self.out)

    def put(self, key: str, value):
        self.doc[key] = value

    def finish(self):
        if self.json:
            self.out.write(json.dumps(self.doc, indent=2, sort_keys=True) + "\n")


# -- stages --------------------------------------------------------------------


def stage_construct(f: FMatrix, em: Emitter) -> bool:
    pres = build_presentation(f)
    em.put("construct", {**f.to_dict(), "presentation": pres.to_json(), "relations": pres.relations()})
    em.text(
        f"p = {f.p}, n = {f.n}",
        f"primitive polynomial m = {f.m}  {f.m.to_list()}",
        "A =", _fmt_matrix(f.A),
        f"b = {f.b.tolist()}",
        f"c = {f.c.tolist()}",
        "f = (columns " + " ".join(f.basis.labels()) + ")", _fmt_matrix(f.full),
        "presentation:", pres.to_text().rstrip(),
        *("  " + r for r in pres.relations()[: pres.n_plus_1]),
    )
    return True


def _emit_report(name: str, report, em: Emitter):
    em.put(name, report_to_json(report))
    for item in report:
        em.text(f"[{'PASS' if item.passed else 'FAIL'}] {name} {item.item}: {item.description}")


def stage_verify_lemmas(f: FMatrix, em: Emitter) -> bool:
    a_report = check_companion_properties(f.A, f.m)
    f_report = check_f_properties(f)
    _emit_report("lemma_A", a_report, em)
    _emit_report("lemma_f", f_report, em)
    return report_passed(a_report) and report_passed(f_report)


def _emit_stab(key: str, res: StabResult, em: Emitter, ok: bool, label: str):
    em.put(key, res.to_dict(include_timing=em.cfg.timing))
    em.text(f"[{'PASS' if ok else 'FAIL'}] {label}; mode {res.mode}; tested {res.tested} of {res.space_size}"
            + (f" ({res.wall_ms:.0f} ms)" if em.cfg.timing else ""))
    if not ok:
        for g in res.elements[:10]:
            em.text(_fmt_matrix(g), "")


def stage_stabilize(f: FMatrix, em: Emitter, mode: str) -> bool:
    if mode == "brute":
        res = stabilizer_bruteforce(f, force=em.cfg.force)
    else:
        res = stabilizer_structured(f)
    ok = res.is_trivial()
    label = "G = {identity}" if ok else f"G has {len(res.elements)} elements"
    _emit_stab(f"stabilize_{mode}", res, em, ok, label)
    return ok


def stage_endo(f: FMatrix, em: Emitter) -> bool:
    res = commuting_endomorphisms(f, force=em.cfg.force)
    ok = res.is_zero_and_identity()
    label = "End_f = {0, identity}" if ok else f"End_f has {len(res.elements)} elements"
    _emit_stab("endo", res, em, ok, label)
    return ok


def stage_proof_steps(f: FMatrix, em: Emitter) -> bool:
    report = verify_proof_steps(f)
    _emit_report("proof_steps", report, em)
    return report_passed(report)


def stage_group(f: FMatrix, em: Emitter, stats: bool, inverse_checks: int) -> bool:
    pres = build_presentation(f)
    if inverse_checks and pres.p == 2:
        raise UsageError("--check-inverse-free: argument requires odd p")
    ok = True
    doc: dict = {"presentation": pres.to_json()}
    em.text(f"P: p = {pres.p}, q = {pres.q}, {pres.n_plus_1} generators, |P| = {pres.order}")
    if stats:
        rep = structure_report(pres)
        doc["structure"] = rep.to_dict()
        for key, entry in rep.to_dict()["quantities"].items():
            mark = "PASS" if entry["matches_paper"] else "FAIL"
            em.text(f"[{mark}] {key} = {entry['value']} (expected {entry['expected']})")
        em.text(f"[{'PASS' if rep.frattini_equals_center else 'FAIL'}] Phi(P) = Z(P)",
                f"[{'PASS' if rep.class_two else 'FAIL'}] nilpotence class 2")
        ok &= rep.all_match_paper
    if inverse_checks:
        rng = random.Random(em.cfg.seed)
        samples = []
        while len(samples) < inverse_checks:
            a = pres.random_element(rng)
            if not is_central(a, pres):
                samples.append(a)
        results = []
        for a in samples:
            obstructed = inverse_image_obstruction(pres, a)
            a2_noncentral = not is_central(multiply(a, a, pres), pres)
            results.append({**element_to_json(a), "obstructed": obstructed, "square_noncentral": a2_noncentral})
        good = all(r["obstructed"] and r["square_noncentral"] for r in results)
        doc["inverse_obstruction"] = {"samples": len(results), "all_obstructed": good, "elements": results}
        em.text(f"[{'PASS' if good else 'FAIL'}] {len(results)} random non-central a: a^2 not central, "
                "so no automorphism maps a to a^-1")
        ok &= good
    em.put("group", doc)
    return ok


# -- argument parsing ------------------------------------------------------------


def _add_common(sp: argparse.ArgumentParser):
    sp.add_argument("--p", type=int, default=2, help="prime p (default 2)")
    sp.add_argument("--n", type=int, default=3, help="dim U = n, so dim V = n + 1 (default 3)")
    sp.add_argument("--b", type=_int_list, help="nonzero vector b of length n")
    sp.add_argument("--c", type=_int_list, help="nonzero vector c of length n(n-1)/2")
    sp.add_argument("--poly", type=_int_list,
                    help="primitive polynomial m, coefficients constant term first, e.g. [1,1,0,1]")
    sp.add_argument("--force", action="store_true", help=f"allow searches over more than {DEFAULT_GUARD} candidates")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--output", choices=["text", "json"], default="text")
    sp.add_argument("--no-timing", dest="timing", action="store_false",
                    help="omit wall-clock times (byte-reproducible output)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="central-aut",
        description="Build class-2 p-groups with only central automorphisms and verify their properties.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("construct", help="print m, A, b, c, f and the presentation of P"))
    _add_common(sub.add_parser("verify-lemmas", help="check the facts about A and f"))
    sp = sub.add_parser("stabilize", help="compute G = {g in GL(V) commuting with f}")
    _add_common(sp)
    sp.add_argument("--mode", choices=["structured", "brute"], default="structured")
    _add_common(sub.add_parser("endo", help="compute all endomorphisms of V commuting with f"))
    sp = sub.add_parser("group", help="build P and report its structure")
    _add_common(sp)
    sp.add_argument("--stats", action="store_true", help="enumerate P and compare orders with the formulas")
    sp.add_argument("--check-inverse-free", type=int, default=0, metavar="K",
                    help="test K random non-central elements for the inverse obstruction (odd p)")
    _add_common(sub.add_parser("proof-steps", help="audit the individual steps forcing G = {1}"))
    sp = sub.add_parser("all", help="run every stage")
    _add_common(sp)
    sp.add_argument("--check-inverse-free", type=int, default=100, metavar="K")
    return parser


def run(args: argparse.Namespace, out=None) -> int:
    out = out or sys.stdout
    cfg = RunConfig(
        p=args.p, n=args.n, b=args.b, c=args.c, poly=args.poly, force=args.force,
        seed=args.seed, output=args.output, timing=args.timing,
    )
    em = Emitter(cfg, out)
    f = cfg.build()
    em.put("config", {"p": cfg.p, "n": cfg.n, "b": f.b.tolist(), "c": f.c.tolist(),
                      "poly": f.m.to_list(), "seed": cfg.seed})
    cmd = args.command
    if cmd == "construct":
        ok = stage_construct(f, em)
    elif cmd == "verify-lemmas":
        ok = stage_verify_lemmas(f, em)
    elif cmd == "stabilize":
        ok = stage_stabilize(f, em, args.mode)
    elif cmd == "endo":
        ok = stage_endo(f, em)
    elif cmd == "group":
        ok = stage_group(f, em, args.stats, args.check_inverse_free)
    elif cmd == "proof-steps":
        ok = stage_proof_steps(f, em)
    else:
        ok = run_all(f, em, args.check_inverse_free)
    em.put("pass", ok)
    em.finish()
    return EXIT_OK if ok else EXIT_FAIL


def run_all(f: FMatrix, em: Emitter, inverse_checks: int) -> bool:
    small = f.p ** ((f.n + 1) ** 2) <= DEFAULT_GUARD or em.cfg.force
    results = {
        "construct": stage_construct(f, em),
        "verify-lemmas": stage_verify_lemmas(f, em),
        "stabilize-structured": stage_stabilize(f, em, "structured"),
        "proof-steps": stage_proof_steps(f, em),
    }
    if small:
        results["stabilize-brute"] = stage_stabilize(f, em, "brute")
        results["endo"] = stage_endo(f, em)
    else:
        em.text("[SKIP] brute-force and endomorphism searches exceed the guard; pass --force to run them")
    pres_order = build_presentation(f).order
    if pres_order <= DEFAULT_GROUP_GUARD:
        checks = inverse_checks if f.p != 2 else 0
        results["group"] = stage_group(f, em, True, checks)
    else:
        em.text(f"[SKIP] |P| = {pres_order} is too large to enumerate")
    em.put("stages", results)
    for name, ok in results.items():
        em.text(f"stage {name}: {'PASS' if ok else 'FAIL'}")
    return all(results.values())


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
