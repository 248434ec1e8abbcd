"""Command line interface.

Subcommands:

* ``check-pair``   -- evaluate the five necessary conditions on a pair file.
* ``decompose``    -- run a construction route and optionally write or verify
                      a certificate file.
* ``check-state``  -- separability analysis of a pair file or a dense state
                      file (detected by the presence of a ``rho`` field).
* ``abs-ppt``      -- spectrum test across realizable orderings, optionally
                      writing a separability certificate per ordering.

Exit codes: 0 success/pass, 1 I/O or parse failure, 2 condition violated /
entangled / test failed, 3 construction not applicable, 4 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import abssep, cldui, construct, fileio, linalg
from .defaults import DEFAULT_SEED, ORDERING_SAMPLES
from .errors import ConditionsViolatedError, NotClduiError, PcpkitError
from .pairs import PairXY, check_necessary, verify_decomposition

EXIT_OK = 0
EXIT_IO = 1
EXIT_VIOLATED = 2
EXIT_NOT_APPLICABLE = 3
EXIT_INCONCLUSIVE = 4

_CONDITION_TEXT = {
    "a": "(a) X Hermitian positive semidefinite",
    "b": "(b) Y real with non-negative entries",
    "c": "(c) diagonals of X and Y agree",
    "d": "(d) |x_ij|^2 <= y_ij y_ji",
    "e": "(e) 1-norm/trace-norm gap of X <= that of Y",
}


def _env_seed() -> int:
    raw = os.environ.get("PCPKIT_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise PcpkitError(f"PCPKIT_SEED must be an integer, got {raw!r}")


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    return value


def _report_payload(report) -> dict:
    return {
        "holds": {c: getattr(report, f"holds_{c}") for c in "abcde"},
        "x_gap": report.x_gap,
        "y_gap": report.y_gap,
        "witnesses": _jsonable(report.witnesses),
    }


def cmd_check_pair(args) -> int:
    pair, _ = fileio.load_pair_document(args.pair)
    report = check_necessary(pair)
    if args.json:
        print(json.dumps({"n": pair.n, **_report_payload(report)}, indent=2))
    else:
        print(f"pair: {args.pair} (n = {pair.n})")
        for c in "abcde":
            ok = getattr(report, f"holds_{c}")
            line = f"{_CONDITION_TEXT[c]:<48} {'PASS' if ok else 'FAIL'}"
            if not ok and c in report.witnesses:
                line += f"  witness: {_jsonable(report.witnesses[c])}"
            print(line)
        print(f"norm gaps: gap(X) = {report.x_gap:.9g}, gap(Y) = {report.y_gap:.9g}")
        if report.all_hold:
            print("verdict: all necessary conditions hold")
        else:
            print(f"verdict: conditions {report.failing()} violated; not decomposable")
    return EXIT_OK if report.all_hold else EXIT_VIOLATED


_METHODS = {
    "auto": lambda pair, perms: construct.decompose_auto(pair, search_permutations=perms),
    "diag": lambda pair, perms: construct.decompose_diagonal_x(pair),
    "2x2": lambda pair, perms: construct.decompose_2x2(pair),
    "recursive": lambda pair, perms: construct.decompose_recursive(pair, search_permutations=perms),
    "comparison": lambda pair, perms: construct.decompose_comparison(pair),
}


def _residuals(dec, pair: PairXY) -> tuple[float, float]:
    from .pairs import reconstruct

    rebuilt = reconstruct(dec)
    return (
        float(np.linalg.norm(rebuilt.X - pair.X)),
        float(np.linalg.norm(rebuilt.Y - pair.Y)),
    )


def cmd_decompose(args) -> int:
    pair, _ = fileio.load_pair_document(args.pair)

    if args.verify is not None:
        dec, meta = fileio.load_certificate(args.verify)
        ok = verify_decomposition(dec, pair, tol=1e-8)
        rx, ry = _residuals(dec, pair)
        if args.json:
            print(json.dumps({"verified": ok, "residual_x": rx, "residual_y": ry,
                              "m": dec.m, "method": meta.get("method")}, indent=2))
        else:
            print(f"certificate: {args.verify} ({dec.m} terms)")
            print(f"residuals: X {rx:.3e}, Y {ry:.3e}")
            print(f"verdict: {'verified' if ok else 'FAILED verification'}")
        return EXIT_OK if ok else EXIT_VIOLATED

    out = _METHODS[args.method](pair, args.perms)
    payload = {"method": out.method, "status": out.status, "reason": out.reason}
    if out.ok:
        rx, ry = _residuals(out.decomposition, pair)
        payload.update({"m": out.decomposition.m, "residual_x": rx, "residual_y": ry})
        if out.permutation is not None:
            payload["permutation"] = list(out.permutation)
        if args.out:
            fileio.save_certificate(args.out, out.decomposition, out.method, out.permutation)
            payload["certificate"] = str(args.out)
    else:
        witness = out.info.get("witness")
        if witness is not None:
            payload["witness"] = _jsonable(witness)
        if "methods" in out.info:
            payload["methods"] = _jsonable(out.info["methods"])

    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(f"method: {out.method}")
        print(f"status: {out.status}" + (f" ({out.reason})" if out.reason else ""))
        if out.ok:
            print(f"terms: {out.decomposition.m}")
            print(f"residuals: X {payload['residual_x']:.3e}, Y {payload['residual_y']:.3e}")
            if out.permutation is not None and list(out.permutation) != sorted(out.permutation):
                print(f"permutation: {list(out.permutation)}")
            if args.out:
                print(f"certificate written to {args.out}")
        else:
            for key in ("witness", "methods"):
                if key in payload:
                    print(f"{key}: {payload[key]}")

    if out.ok:
        return EXIT_OK
    if out.status == construct.CONDITIONS_VIOLATED:
        return EXIT_VIOLATED
    return EXIT_NOT_APPLICABLE


def cmd_check_state(args) -> int:
    if fileio.is_dense_document(args.state):
        rho, n = fileio.load_dense_state(args.state)
        pair = cldui.extract_pair(rho, n)
        source = "dense"
    else:
        pair, _ = fileio.load_pair_document(args.state)
        source = "pair"

    if args.normalize:
        weight = float(np.trace(pair.X).real + np.abs(pair.Y).sum()
                       - np.abs(np.diag(pair.Y)).sum())
        if weight <= 0.0:
            raise PcpkitError("cannot normalize: the state has non-positive trace")
        pair = PairXY(pair.X / weight, pair.Y / weight)

    report = check_necessary(pair)
    lines = [f"state: {args.state} ({source} form, n = {pair.n})"]
    payload = {"n": pair.n, "form": source, **_report_payload(report)}
    if not report.holds_abc:
        message = f"not a state: conditions {report.failing()} fail"
        if args.json:
            payload["verdict"] = "invalid"
            print(json.dumps(payload, indent=2))
        else:
            print("\n".join(lines + [message]))
        return EXIT_VIOLATED

    state = cldui.build_state(pair)
    trace = state.trace
    ppt_ok, ppt_witness = cldui.ppt_check(pair)
    realign = cldui.realignment_check(pair)
    lines.append(f"trace: {trace:.9g}")
    lines.append(f"ppt criterion: {'PASS' if ppt_ok else 'FAIL'}")
    lines.append(
        f"realignment criterion: {'PASS' if realign.passes else 'FAIL'} "
        f"(gap(X) = {realign.x_gap:.9g}, gap(Y) = {realign.y_gap:.9g})"
    )
    payload.update({
        "trace": trace,
        "ppt": ppt_ok,
        "realignment": {"passes": realign.passes,
                        "x_gap": realign.x_gap, "y_gap": realign.y_gap},
    })

    if args.dense_crosscheck:
        dense = state.dense
        pt_psd = linalg.is_psd(cldui.partial_transpose(dense, pair.n))
        r_trace = linalg.trace_norm(cldui.realign_map(dense, pair.n))
        dense_realign = r_trace <= trace + 1e-8 * max(1.0, trace)
        lines.append(
            f"dense cross-check: PT PSD {pt_psd} (agrees: {pt_psd == ppt_ok}), "
            f"realigned trace norm {r_trace:.9g} vs trace {trace:.9g} "
            f"(agrees: {dense_realign == realign.passes})"
        )
        payload["dense_crosscheck"] = {
            "pt_psd": pt_psd,
            "realigned_trace_norm": r_trace,
            "agrees": bool(pt_psd == ppt_ok and dense_realign == realign.passes),
        }

    verdict = cldui.separability_verdict(pair)
    payload["verdict"] = verdict.verdict
    if verdict.verdict == cldui.ENTANGLED:
        lines.append(f"verdict: entangled (by the {verdict.criterion} criterion)")
        payload["criterion"] = verdict.criterion
    elif verdict.verdict == cldui.SEPARABLE:
        lines.append(f"verdict: separable (certificate via the {verdict.criterion} route)")
        payload["criterion"] = verdict.criterion
        if args.out:
            fileio.save_certificate(args.out, verdict.certificate,
                                    verdict.outcome.method, verdict.outcome.permutation)
            lines.append(f"certificate written to {args.out}")
            payload["certificate"] = str(args.out)
    else:
        lines.append("verdict: inconclusive (criteria pass, no construction route applied)")
        if verdict.outcome is not None:
            payload["methods"] = _jsonable(verdict.outcome.info.get("methods", {}))

    print(json.dumps(payload, indent=2) if args.json else "\n".join(lines))
    if verdict.verdict == cldui.SEPARABLE:
        return EXIT_OK
    if verdict.verdict == cldui.ENTANGLED:
        return EXIT_VIOLATED
    return EXIT_INCONCLUSIVE


def _read_lambdas(raw: str) -> list[float]:
    if raw.startswith("@"):
        path = Path(raw[1:])
        try:
            text = path.read_text()
        except OSError as exc:
            raise PcpkitError(f"cannot read {path}: {exc}") from exc
        tokens = text.replace(",", " ").split()
    else:
        tokens = raw.replace(",", " ").split()
    try:
        return [float(t) for t in tokens]
    except ValueError as exc:
        raise PcpkitError(f"spectrum entries must be numbers: {exc}") from exc


def cmd_abs_ppt(args) -> int:
    lam = _read_lambdas(args.lambdas)
    orderings = abssep.enumerate_orderings(args.n, samples=args.samples, seed=args.seed)
    passes, failing = abssep.abs_ppt_check(args.n, lam, orderings=orderings)
    lam_sorted = sorted((max(v, 0.0) for v in lam), reverse=True)

    payload = {"n": args.n, "orderings": len(orderings), "passes": passes,
               "failing_ordering": failing}
    lines = [f"n = {args.n}: {len(orderings)} realizable orderings "
             f"(samples = {args.samples}, seed = {args.seed})"]
    certificates = []
    for idx, ordering in enumerate(orderings):
        Z = abssep.l_map_matrix(ordering, lam_sorted)
        min_eig = float(np.linalg.eigvalsh(Z).min())
        ok = linalg.is_psd(Z)
        lines.append(f"ordering {idx}: min eigenvalue {min_eig:.9g} -> {'PASS' if ok else 'FAIL'}")
        if args.certify and ok:
            out = abssep.certify_special_separable(ordering, lam_sorted)
            path = Path(args.out_dir) / f"ordering_{idx}_certificate.json"
            fileio.save_certificate(path, out.decomposition, out.method,
                                    ordering_index=idx)
            certificates.append(str(path))
            lines.append(f"ordering {idx}: certificate written to {path}")
    if certificates:
        payload["certificates"] = certificates
    lines.append("verdict: " + ("spectrum stays PPT under every global unitary"
                                if passes else
                                f"test fails at ordering {failing}"))

    print(json.dumps(payload, indent=2) if args.json else "\n".join(lines))
    return EXIT_OK if passes else EXIT_VIOLATED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcpkit",
        description="Certify or refute joint rank-one decomposability of matrix pairs "
                    "and analyze the matching family of bipartite states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-pair", help="evaluate the five necessary conditions")
    p.add_argument("pair", help="pair JSON file")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_check_pair)

    p = sub.add_parser("decompose", help="run a construction route")
    p.add_argument("pair", help="pair JSON file")
    p.add_argument("--method", choices=sorted(_METHODS), default="auto")
    p.add_argument("--perms", action="store_true",
                   help="retry the row-by-row route under permutations")
    p.add_argument("--out", help="write the certificate to this JSON file")
    p.add_argument("--verify", metavar="CERT",
                   help="verify an existing certificate file against the pair")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("check-state", help="separability analysis of a state")
    p.add_argument("state", help="pair JSON file or dense state JSON file")
    p.add_argument("--normalize", action="store_true",
                   help="rescale to unit trace before the analysis")
    p.add_argument("--dense-crosscheck", action="store_true",
                   help="also run the dense-matrix versions of both criteria")
    p.add_argument("--out", help="write the separability certificate here on success")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check_state)

    p = sub.add_parser("abs-ppt", help="spectrum test across realizable orderings")
    p.add_argument("--n", type=int, required=True, help="local dimension (2-5)")
    p.add_argument("--lambdas", required=True,
                   help="n^2 eigenvalues, comma/space separated, or @file")
    p.add_argument("--certify", action="store_true",
                   help="write a separability certificate per passing ordering")
    p.add_argument("--out-dir", default=".", help="directory for certificate files")
    p.add_argument("--samples", type=int, default=ORDERING_SAMPLES)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_abs_ppt)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "seed", None) is None and args.command == "abs-ppt":
            args.seed = _env_seed()
        return args.func(args)
    except ConditionsViolatedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATED
    except NotClduiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    except PcpkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
