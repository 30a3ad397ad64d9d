"""Command-line front end: JSON in, JSON out, exact fractions throughout.

Exit codes: 0 on success, 1 on verification failure, 2 on malformed input.
Outputs are deterministic (sorted keys, compact separators), so fixed
invocations are byte-stable.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import serialize as ser
from .derivations import (
    ClassificationError,
    DerivationError,
    build_derivation,
    check_relations,
    classify_positive,
    degree_profile,
    inner_witness,
    q_check,
)
from .disc_plane import build_sigma_q, classify_sigma_q, disc_commutation_identities
from .gwa import GwaAlgebra, make_grading
from .ortho import CertificateError, certificate_from_ideal, verify_certificate
from .serialize import SchemaError

OK, VERIFY_FAIL, BAD_INPUT = 0, 1, 2


class VerificationFailure(Exception):
    """Carries a JSON-ready failure payload (exit code 1)."""

    def __init__(self, payload: dict):
        super().__init__(ser.dumps(payload))
        self.payload = payload


def _emit(payload: dict) -> int:
    print(ser.dumps(payload))
    return OK


def _parse_rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad fraction {text!r}: {exc}") from exc


def _algebra(args) -> GwaAlgebra:
    if getattr(args, "algebra_json", None):
        return ser.algebra_from_json(_load_json(args.algebra_json))
    if args.algebra in ("disc", "plane"):
        if args.q is None:
            raise SchemaError("--q is required for the disc/plane presets")
        q = _parse_rat(args.q)
        try:
            return GwaAlgebra.disc(q) if args.algebra == "disc" else GwaAlgebra.plane(q)
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
    raise SchemaError("custom algebras are passed via --algebra-json")


def _load_json(text_or_path: str, from_input: bool = False) -> object:
    if from_input:
        if text_or_path == "-":
            text = sys.stdin.read()
        else:
            try:
                with open(text_or_path) as fh:
                    text = fh.read()
            except OSError as exc:
                raise SchemaError(f"cannot read {text_or_path!r}: {exc}") from exc
    else:
        text = text_or_path
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc


def _input_doc(args) -> object:
    return _load_json(args.input, from_input=True)


def _derivation(args, A: GwaAlgebra, doc=None):
    doc = _input_doc(args) if doc is None else doc
    cand = ser.derivation_from_json(doc, A)
    report = check_relations(A, cand.mu, cand.on_h, cand.on_x, cand.on_y)
    if not report.ok:
        name, residual = report.violations[0]
        raise VerificationFailure(
            {
                "verified": False,
                "violation": {
                    "relation": name,
                    "residual": ser.element_to_json(residual),
                },
            }
        )
    return report.derivation


# -- subcommand handlers -------------------------------------------------------


def _cmd_mul(args) -> int:
    A = _algebra(args)
    lhs = ser.element_from_json(_load_json(args.lhs), A)
    rhs = ser.element_from_json(_load_json(args.rhs), A)
    return _emit(ser.element_to_json(lhs * rhs))


def _cmd_lemma52(args) -> int:
    q = _parse_rat(args.q)
    if q == 0 or q == 1 or q == -1:
        raise SchemaError("q must avoid {0, 1, -1}")
    if args.n < 1:
        raise SchemaError("--n must be >= 1")
    return _emit({"ok": disc_commutation_identities(args.n, q)})


def _cmd_check_derivation(args) -> int:
    A = _algebra(args)
    _derivation(args, A)
    return _emit({"verified": True})


def _cmd_build_derivation(args) -> int:
    A = _algebra(args)
    data = ser.weight_data_from_json(_input_doc(args))
    try:
        d = build_derivation(data, A)
    except DerivationError as exc:
        raise VerificationFailure({"error": {"detail": str(exc), "kind": "condition"}})
    return _emit(ser.derivation_to_json(d))


def _cmd_build_sigma_q(args) -> int:
    A = _algebra(args)
    data = ser.sigma_q_data_from_json(_input_doc(args))
    d = build_sigma_q(data, A)
    return _emit(ser.derivation_to_json(d))


def _cmd_classify(args) -> int:
    A = _algebra(args)
    d = _derivation(args, A)
    try:
        if args.mode == "positive":
            return _emit(ser.weight_data_to_json(classify_positive(d, A)))
        return _emit(ser.sigma_q_data_to_json(classify_sigma_q(d, A)))
    except ClassificationError as exc:
        raise VerificationFailure(
            {"error": {"detail": str(exc), "kind": "not-of-this-form"}}
        )


def _cmd_q_check(args) -> int:
    A = _algebra(args)
    d = _derivation(args, A)
    result = q_check(d)
    payload = {"is_q_derivation": result.is_q_derivation}
    if result.is_q_derivation:
        payload["Q"] = ser.rat_to_json(result.Q)
    return _emit(payload)


def _cmd_degree_profile(args) -> int:
    A = _algebra(args)
    try:
        grading = make_grading(A, args.w, args.k)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    d = _derivation(args, A)
    shift = degree_profile(d, grading)
    return _emit({"degree": "inhomogeneous" if shift is None else shift})


def _cmd_inner_witness(args) -> int:
    A = _algebra(args)
    d = _derivation(args, A)
    witness = inner_witness(d, A, args.degree_bound, args.poly_bound)
    if witness is None:
        return _emit({"witness": None})
    return _emit({"witness": ser.element_to_json(witness)})


def _systems_doc(args, A: GwaAlgebra) -> tuple[list, object]:
    doc = _input_doc(args)
    if not isinstance(doc, dict) or "derivations" not in doc:
        raise SchemaError("expected a document with a derivations array")
    system = []
    for entry in doc["derivations"]:
        system.append(_derivation(args, A, doc=entry))
    return system, doc


def _cmd_ortho_build(args) -> int:
    A = _algebra(args)
    system, doc = _systems_doc(args, A)
    if "b_list" not in doc:
        raise SchemaError("expected a b_list array of designated generators")
    b_list = [ser.element_from_json(entry, A) for entry in doc["b_list"]]
    try:
        cert = certificate_from_ideal(b_list, system, A)
    except CertificateError as exc:
        payload = {"error": {"detail": str(exc), "kind": "certificate"}}
        if exc.gcd is not None:
            payload["error"]["gcd"] = ser.poly_to_json(exc.gcd)
        raise VerificationFailure(payload)
    return _emit(ser.certificate_to_json(cert))


def _cmd_ortho_verify(args) -> int:
    A = _algebra(args)
    system, doc = _systems_doc(args, A)
    if "certificate" not in doc:
        raise SchemaError("expected a certificate field")
    cert = ser.certificate_from_json(doc["certificate"], A)
    check = verify_certificate(cert, system, A)
    if not check.ok:
        i, k, residual = check.failures[0]
        raise VerificationFailure(
            {
                "ok": False,
                "failure": {"i": i, "k": k, "residual": ser.element_to_json(residual)},
            }
        )
    return _emit({"ok": True})


# -- parser ---------------------------------------------------------------------


def _add_algebra_flags(sub) -> None:
    sub.add_argument("--algebra", choices=["disc", "plane", "custom"], default="disc")
    sub.add_argument("--q", help="deformation parameter as num/den")
    sub.add_argument("--algebra-json", help="full algebra document (overrides presets)")


def _add_input_flag(sub) -> None:
    sub.add_argument("--input", default="-", help="JSON document: a file path or - for stdin")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gwa-skew",
        description="Exact computations with skew derivations on generalized Weyl algebras",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("mul", help="multiply two normal-form elements")
    _add_algebra_flags(p)
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.set_defaults(handler=_cmd_mul)

    p = subs.add_parser("lemma52", help="check the disc commutation identities")
    p.add_argument("--q", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_lemma52)

    p = subs.add_parser("check-derivation", help="verify generator values against the relations")
    _add_algebra_flags(p)
    _add_input_flag(p)
    p.set_defaults(handler=_cmd_check_derivation)

    p = subs.add_parser("build-derivation", help="assemble a derivation from weighted data")
    _add_algebra_flags(p)
    _add_input_flag(p)
    p.set_defaults(handler=_cmd_build_derivation)

    p = subs.add_parser("build-sigma-q", help="assemble a coarseness-q derivation")
    _add_algebra_flags(p)
    _add_input_flag(p)
    p.set_defaults(handler=_cmd_build_sigma_q)

    p = subs.add_parser("classify", help="recover constructor data from a derivation")
    _add_algebra_flags(p)
    _add_input_flag(p)
    p.add_argument("--mode", choices=["positive", "sigma-q"], required=True)
    p.set_defaults(handler=_cmd_classify)

    p = subs.add_parser("q-check", help="decide the scalar Q with sigma d sigma^{-1} = Q d")
    _add_algebra_flags(p)
    _add_input_flag(p)
    p.set_defaults(handler=_cmd_q_check)

    p = subs.add_parser("degree-profile", help="degree shift of a derivation under a grading")
    _add_algebra_flags(p)
    _add_input_flag(p)
    p.add_argument("--w", type=int, required=True, help="degree of h")
    p.add_argument("--k", type=int, required=True, help="degree of x")
    p.set_defaults(handler=_cmd_degree_profile)

    p = subs.add_parser("inner-witness", help="search for a twisted-commutator witness")
    _add_algebra_flags(p)
    _add_input_flag(p)
    p.add_argument("--degree-bound", type=int, required=True)
    p.add_argument("--poly-bound", type=int, required=True)
    p.set_defaults(handler=_cmd_inner_witness)

    p = subs.add_parser("ortho-build", help="construct an orthogonality certificate")
    _add_algebra_flags(p)
    _add_input_flag(p)
    p.set_defaults(handler=_cmd_ortho_build)

    p = subs.add_parser("ortho-verify", help="verify an orthogonality certificate")
    _add_algebra_flags(p)
    _add_input_flag(p)
    p.set_defaults(handler=_cmd_ortho_verify)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code not in (0, None) else OK
    try:
        return args.handler(args)
    except VerificationFailure as exc:
        print(ser.dumps(exc.payload))
        return VERIFY_FAIL
    except SchemaError as exc:
        print(ser.dumps({"error": {"detail": str(exc), "kind": "schema"}}))
        return BAD_INPUT
    except (DerivationError, ClassificationError, CertificateError, ValueError) as exc:
        print(ser.dumps({"error": {"detail": str(exc), "kind": "invalid-input"}}))
        return BAD_INPUT


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
