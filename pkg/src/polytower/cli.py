"""Command line front end.

    polytower check K.cplx
    polytower homology K.cplx --verify-splitting
    polytower factors K.cplx --n 2,2 --dims 1,1 --variant multi
    polytower hall --letters 2 --max-len 5
    polytower witness K.cplx --dims 1,1 --count 10

Exit status: 0 ok, 1 parse/input error, 2 hypothesis violation,
3 verification failure, 4 enumeration safety cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import convergence, homology, lie, simplicial, tower

EXIT_OK, EXIT_PARSE, EXIT_HYPOTHESIS, EXIT_VERIFY, EXIT_CAP = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        raise UsageError(message)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _ints(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _dims(text: str, m: int) -> tower.SpaceSpec:
    dims = _ints(text)
    if len(dims) == 1:
        dims = dims * m
    if len(dims) != m:
        raise UsageError(f"--dims needs {m} entries (or one to broadcast), got {len(dims)}")
    try:
        return tower.SpaceSpec(tuple(dims))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="polytower", description="Goodwillie tower factors of polyhedral products")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, with_complex: bool = True):
        if with_complex:
            sp.add_argument("complex", help="complex file: 'm=<int>' then one facet per line")
        sp.add_argument("--format", choices=("table", "json"), default="table")
        return sp

    c = common(sub.add_parser("check", help="summarize a complex and classify convergence"))
    c.add_argument("--assume-trivial-fwf", action="store_true")

    h = common(sub.add_parser("homology", help="homology of K and its real moment-angle complex"))
    h.add_argument("--verify-splitting", action="store_true")

    f = common(sub.add_parser("factors", help="enumerate decomposition factors"))
    f.add_argument("--n", required=True, help="multi-index n1,...,nm (or a single n)")
    f.add_argument("--dims", default="1", help="sphere dimensions d1,...,dm (or one value)")
    f.add_argument("--variant", choices=tower.VARIANTS, default="multi")
    f.add_argument("--assume-trivial-fwf", action="store_true")
    f.add_argument("--cap", type=int, default=tower.DEFAULT_CAP, help="safety cap on enumerated words")

    g = common(sub.add_parser("hall", help="Lyndon/Hall basis listing with Witt cross-check"), False)
    g.add_argument("--letters", type=int, required=True)
    g.add_argument("--max-len", type=int, required=True)

    w = common(sub.add_parser("witness", help="periodic divergence witnesses"))
    w.add_argument("--dims", default="1")
    w.add_argument("--count", type=int, default=10)
    w.add_argument("--assume-trivial-fwf", action="store_true")
    return p


# ---------------------------------------------------------------------------
# command bodies: each returns (payload, table lines, exit status)


def cmd_check(K: simplicial.SimplicialComplex, args) -> tuple[dict, list[str], int]:
    report = convergence.classify(K, args.assume_trivial_fwf)
    missing = simplicial.minimal_missing_faces(K)
    payload = {
        "complex": K.to_json(),
        "faces": len(K.faces),
        "dimension": K.dimension,
        "shifted": simplicial.is_shifted(K),
        "full_simplex": simplicial.is_full_simplex(K),
        "certificate": report.certificate.value,
        "minimal_missing_faces": [list(f) for f in missing],
        "convergence": report.to_json(),
    }
    lines = [
        f"complex        {K}",
        f"faces          {len(K.faces)} (dimension {K.dimension})",
        f"shifted        {payload['shifted']}",
        f"certificate    {report.certificate.value}",
        f"missing faces  {' '.join('{' + ','.join(map(str, f)) + '}' for f in missing) or '-'}",
        f"convergence    {report.classification.value}",
    ]
    if report.witness_face:
        lines.append(f"witness face   {{{','.join(map(str, report.witness_face))}}}")
    return payload, lines, EXIT_OK


def cmd_homology(K: simplicial.SimplicialComplex, args) -> tuple[dict, list[str], int]:
    rz = homology.real_moment_angle_complex(K)
    cub = homology.cubical_homology(rz)
    payload = {
        "complex": K.to_json(),
        "simplicial": homology.simplicial_homology(K).to_json(),
        "real_moment_angle": {"cells": len(rz.cells), "homology": cub.to_json()},
    }
    lines = [
        f"H~(K)          {homology.simplicial_homology(K)}",
        f"H~(RZ_K)       {cub}   ({len(rz.cells)} cells)",
    ]
    status = EXIT_OK
    if args.verify_splitting:
        wedge = homology.wedge_splitting_homology(K)
        verdict = "PASS" if wedge == cub else "FAIL"
        payload["wedge_splitting"] = wedge.to_json()
        payload["verdict"] = verdict
        lines.append(f"wedge sum      {wedge}")
        lines.append(f"splitting      {verdict}")
        status = EXIT_OK if verdict == "PASS" else EXIT_VERIFY
    return payload, lines, status


def cmd_factors(K: simplicial.SimplicialComplex, args) -> tuple[dict, list[str], int]:
    spec = _dims(args.dims, K.m)
    nvals = _ints(args.n)
    if args.variant in ("single", "bh"):
        if len(nvals) != 1:
            raise UsageError(f"variant {args.variant} takes a single integer --n")
        n: object = nvals[0]
    else:
        if len(nvals) != K.m:
            raise UsageError(f"--n needs {K.m} entries for variant {args.variant}")
        n = tuple(nvals)
    if min(nvals) < 0:
        raise UsageError("--n entries must be >= 0")
    if args.variant == "single" and len(set(spec.dims)) != 1:
        raise UsageError("variant single needs equal sphere dimensions")
    dec = tower.full_decomposition(
        K, n, spec, args.variant, assume_trivial_fwf=args.assume_trivial_fwf, cap=args.cap
    )
    payload = dec.to_json()
    lines = [f"variant {dec.variant}  n={dec.metadata['n']}  dims={list(spec.dims)}  "
             f"certificate={dec.metadata['certificate']}"]
    lines.append(f"{'kappa':>5}  {'a':<14} {'word':<40} {'space':<36} homology")
    for fac in dec.lie_factors:
        lines.append(
            f"{fac.kappa:>5}  {str(list(fac.a)):<14} {fac.word_labels():<40} {fac.space:<36} {fac.homology}"
        )
    for pf in dec.product_factors:
        lines.append(f"product  P_{pf.degree}(id)(S^{pf.sphere_dim})  [variable {pf.variable}]")
    lines.append(
        f"{len(dec.lie_factors)} lie factors, {len(dec.product_factors)} product factors; "
        f"{dec.metadata['words_examined']} words examined"
    )
    return payload, lines, EXIT_OK


def cmd_hall(args) -> tuple[dict, list[str], int]:
    if args.letters < 1 or args.max_len < 1:
        raise UsageError("--letters and --max-len must be >= 1")
    A = lie.Alphabet.simple(args.letters)
    words = [lie.standard_bracketing(w, A) for w in lie.lyndon_words(A, args.max_len)]
    counts = [sum(1 for w in words if w.length == n) for n in range(1, args.max_len + 1)]
    witt = [lie.witt_count(args.letters, n) for n in range(1, args.max_len + 1)]
    verdict = "PASS" if counts == witt else "FAIL"
    payload = {
        "letters": args.letters,
        "max_len": args.max_len,
        "words": [{"word": "".join(A.label(i) for i in w.letters), "bracket": str(w)} for w in words],
        "counts": counts,
        "witt": witt,
        "verdict": verdict,
    }
    lines = [f"{''.join(A.label(i) for i in w.letters):<12} {w}" for w in words]
    lines.append(f"counts {counts}")
    lines.append(f"witt   {witt}  {verdict}")
    return payload, lines, EXIT_OK if verdict == "PASS" else EXIT_VERIFY


def cmd_witness(K: simplicial.SimplicialComplex, args) -> tuple[dict, list[str], int]:
    spec = _dims(args.dims, K.m)
    if args.count < 0:
        raise UsageError("--count must be >= 0")
    if simplicial.is_full_simplex(K):
        raise tower.HypothesisError("K is the full simplex: no missing face, the tower converges")
    tower.require_certificate(K, args.assume_trivial_fwf)
    ws = convergence.divergence_witnesses(K, spec, args.count)
    face = simplicial.minimal_missing_faces(K)[0]
    payload = {
        "face": list(face),
        "note": convergence.WITNESS_NOTE,
        "witnesses": [w.to_json() for w in ws],
    }
    lines = [f"minimal missing face {{{','.join(map(str, face))}}}  ({convergence.WITNESS_NOTE})"]
    lines += [f"S^{w.sphere_dim:<4} {w.word}" for w in ws]
    return payload, lines, EXIT_OK


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "hall":
            payload, lines, status = cmd_hall(args)
        else:
            K = simplicial.load_complex(args.complex)
            body = {"check": cmd_check, "homology": cmd_homology,
                    "factors": cmd_factors, "witness": cmd_witness}[args.command]
            payload, lines, status = body(K, args)
    except (UsageError, simplicial.ComplexError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    except tower.HypothesisError as exc:
        print(f"hypothesis violation: {exc}", file=err)
        return EXIT_HYPOTHESIS
    except lie.EnumerationCapExceeded as exc:
        print(f"enumeration stopped: {exc} (use --cap)", file=err)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    if args.format == "json":
        out.write(canonical_json(payload) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
