"""Command-line batch interface.

One JSON problem document in, one JSON report out (stdout), a short human
summary on stderr.  Rationals cross the boundary as strings like "2/3"
(or plain integers); floats are rejected outright so exactness survives
round trips.  Exit codes: 0 success / PASS, 1 malformed input, 2 a
structural assumption failed (cone not pointed, lattice not saturated,
semigroup not normal or normality unverified), 3 a resource cap was hit
and the emitted result is uncertified, 4 verification FAIL.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .bsato import BFunctionResult, TruncationExhausted, bfunction
from .exactnum import IntMatrix
from .multipoly import UniPoly
from .multiplier import (
    JumpingReport,
    jumping_coefficients,
    lct,
    multiplier_ideal,
    transport,
    transport_polynomial,
    verify_correspondence,
)
from .polyhedra import INFINITY
from .toric import (
    MonomialIdeal,
    SemigroupData,
    StructuralError,
    build_semigroup,
    is_normal,
    monomial_ideal,
)

__all__ = ["main", "run"]

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_STRUCTURAL = 2
EXIT_UNCERTIFIED = 3
EXIT_FAIL = 4

_RATIONAL_RE = re.compile(r"[+-]?\d+(/[1-9]\d*)?")

_POLY_NOTE = (
    "transported generators span the image ideal; b-functions of "
    "non-monomial ideals are out of scope here - feed the transported "
    "generators to a D-module system"
)


class DocumentError(ValueError):
    """Problem document malformed (schema, floats, missing fields)."""


# ---------------------------------------------------------------------------
# document parsing
# ---------------------------------------------------------------------------


def _reject_float(_s: str):
    raise DocumentError("floats are not accepted; use rational strings like \"2/3\"")


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise DocumentError(f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL_RE.fullmatch(value):
        return Fraction(value)
    raise DocumentError(f"expected a rational like \"2/3\", got {value!r}")


def _int_list(value, what: str) -> list[int]:
    if not isinstance(value, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in value
    ):
        raise DocumentError(f"{what} must be a list of integers")
    return list(value)


class Document:
    """Parsed problem document: matrix, optional ideal, options."""

    def __init__(self, raw: dict):
        if not isinstance(raw, dict):
            raise DocumentError("document must be a JSON object")
        unknown = set(raw) - {"matrix", "ideal", "options"}
        if unknown:
            raise DocumentError(f"unknown document fields: {sorted(unknown)}")
        if "matrix" not in raw:
            raise DocumentError("document needs a \"matrix\"")
        rows = raw["matrix"]
        if not isinstance(rows, list) or not rows:
            raise DocumentError("matrix must be a nonempty list of rows")
        self.matrix_rows = [_int_list(r, "matrix row") for r in rows]
        if len({len(r) for r in self.matrix_rows}) != 1:
            raise DocumentError("matrix rows must have equal length")
        self.monomial: Optional[list[list[int]]] = None
        self.polynomial = None
        ideal = raw.get("ideal")
        if ideal is not None:
            if not isinstance(ideal, dict) or len(ideal) != 1:
                raise DocumentError("ideal must be {\"monomial\": ...} or {\"polynomial\": ...}")
            kind, body = next(iter(ideal.items()))
            if kind == "monomial":
                if not isinstance(body, list) or not body:
                    raise DocumentError("monomial ideal needs a nonempty exponent list")
                self.monomial = [_int_list(v, "exponent") for v in body]
            elif kind == "polynomial":
                self.polynomial = self._parse_polynomial(body)
            else:
                raise DocumentError(f"unknown ideal kind {kind!r}")
        opts = raw.get("options", {})
        if not isinstance(opts, dict):
            raise DocumentError("options must be an object")
        self.options = opts

    @staticmethod
    def _parse_polynomial(body) -> list[list[tuple[Fraction, tuple[int, ...]]]]:
        if not isinstance(body, list) or not body:
            raise DocumentError("polynomial ideal needs a nonempty generator list")
        gens = []
        for terms in body:
            if not isinstance(terms, list) or not terms:
                raise DocumentError("each polynomial generator is a nonempty term list")
            parsed = []
            for term in terms:
                if not isinstance(term, dict) or set(term) != {"coeff", "exp"}:
                    raise DocumentError("each term is {\"coeff\": ..., \"exp\": [...]}")
                parsed.append(
                    (parse_rational(term["coeff"]), tuple(_int_list(term["exp"], "exponent")))
                )
            gens.append(parsed)
        return gens

    def option_rational(self, name: str, override) -> Optional[Fraction]:
        if override is not None:
            return parse_rational(override)
        if name in self.options:
            return parse_rational(self.options[name])
        return None

    def option_int(self, name: str, override, default: int) -> int:
        value = override if override is not None else self.options.get(name)
        if value is None:
            return default
        if not isinstance(value, int) or isinstance(value, bool):
            raise DocumentError(f"option {name!r} must be an integer")
        return value


def load_document(path: str) -> Document:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(
                fh,
                parse_float=_reject_float,
                parse_constant=_reject_float,
            )
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    return Document(raw)


# ---------------------------------------------------------------------------
# report encoding
# ---------------------------------------------------------------------------


def frac_str(x) -> str:
    if x == INFINITY:
        return "infinity"
    return str(Fraction(x))


def _unipoly_json(p: UniPoly) -> dict:
    return {
        "coefficients": [frac_str(c) for c in p.coeffs],
        "text": p.format("s"),
    }


def _roots_json(roots) -> list:
    return [{"value": frac_str(r), "multiplicity": m} for r, m in roots]


def _bfunction_json(res: BFunctionResult) -> dict:
    return {
        "b": _unipoly_json(res.b),
        "roots": _roots_json(res.roots),
        "roots_negated": _roots_json(sorted(((-r, m) for r, m in res.roots))),
        "unfactored_remainder": _unipoly_json(res.unfactored_remainder),
        "box_used": res.box_used,
        "stabilized": res.stabilized,
        "generator_count": res.generator_count,
        "truncation": [
            {"box": B, "polynomial": None if p is None else _unipoly_json(p)}
            for B, p in res.truncation
        ],
    }


def _jumping_json(jr: JumpingReport) -> dict:
    return {
        "lct": frac_str(jr.lct),
        "jumping": [
            {"alpha": frac_str(a), "witness": list(v)} for a, v in jr.jumping
        ],
        "window_max": frac_str(jr.window_max),
        "search_mode": jr.search_mode,
        "unresolved": [frac_str(a) for a in jr.unresolved],
        "bfunction_check": jr.bfunction_check,
    }


def _emit(report: dict, summary: str, code: int) -> int:
    print(json.dumps(report, indent=2, sort_keys=True))
    print(summary, file=sys.stderr)
    return code


def _error(command: str, code: int, message: str, extra: Optional[dict] = None) -> int:
    report = {"command": command, "error": {"code": code, "message": message}}
    if extra:
        report["error"].update(extra)
    return _emit(report, f"{command}: error: {message}", code)


# ---------------------------------------------------------------------------
# command implementations
# ---------------------------------------------------------------------------

_NEEDS_NORMAL = {"transport", "bfunction", "lct", "multiplier", "jumping", "verify"}


def _require_monomial(doc: Document, command: str, S: SemigroupData) -> MonomialIdeal:
    if doc.monomial is None:
        if doc.polynomial is not None:
            raise DocumentError(
                f"{command} needs a monomial ideal; {_POLY_NOTE}"
            )
        raise DocumentError(f"{command} needs an \"ideal\" entry")
    return monomial_ideal(S, doc.monomial)


def _normality_gate(doc: Document, args, S: SemigroupData) -> Optional[tuple[int, str, dict]]:
    """Return (code, message, extra) when the command may not proceed."""
    if not S.saturated:
        return (EXIT_STRUCTURAL, "ZA != Z^d", {})
    if args.check_normal:
        if not is_normal(S):
            return (
                EXIT_STRUCTURAL,
                "semigroup is not normal",
                {"witness": list(S.normality_witness)},
            )
        return None
    if args.assume_normal or doc.options.get("assume_normal") is True:
        return None
    return (
        EXIT_STRUCTURAL,
        "normality unverified: pass --check-normal to verify or --assume-normal to proceed",
        {},
    )


def run(command: str, doc: Document, args) -> int:
    """Execute one command against a parsed document; returns the exit code."""
    try:
        S = build_semigroup(IntMatrix(doc.matrix_rows))
    except StructuralError as exc:
        return _error(command, EXIT_STRUCTURAL, str(exc))

    if command == "check":
        report = {
            "command": "check",
            "matrix": doc.matrix_rows,
            "pointed": True,
            "saturated": S.saturated,
            "facets": [list(f) for f in S.facets],
            "normal": None,
            "normality_witness": None,
        }
        code = EXIT_OK
        summary = "check: pointed, " + ("saturated" if S.saturated else "NOT saturated")
        if not S.saturated:
            code = EXIT_STRUCTURAL
        if args.check_normal:
            ok = is_normal(S)
            report["normal"] = ok
            if not ok:
                report["normality_witness"] = list(S.normality_witness)
                code = EXIT_STRUCTURAL
                summary += f", NOT normal (witness {tuple(S.normality_witness)})"
            else:
                summary += ", normal"
        return _emit(report, summary, code)

    if command == "facets":
        report = {
            "command": "facets",
            "matrix": doc.matrix_rows,
            "facets": [list(f) for f in S.facets],
        }
        return _emit(report, f"facets: {[tuple(f) for f in S.facets]}", EXIT_OK)

    if command in _NEEDS_NORMAL:
        gate = _normality_gate(doc, args, S)
        if gate is not None:
            code, message, extra = gate
            return _error(command, code, message, extra)

    if command == "transport":
        if doc.polynomial is not None:
            mapped = transport_polynomial(S, doc.polynomial)
            report = {
                "command": "transport",
                "kind": "polynomial",
                "term_generators": [
                    [{"coeff": frac_str(c), "exp": list(e)} for c, e in terms]
                    for terms in mapped
                ],
                "note": _POLY_NOTE,
            }
            return _emit(report, f"transport: {len(mapped)} polynomial generators", EXIT_OK)
        ideal = _require_monomial(doc, command, S)
        gens = transport(S, ideal)
        report = {
            "command": "transport",
            "kind": "monomial",
            "generators": [list(q) for q in gens],
        }
        return _emit(report, f"transport: {[tuple(q) for q in gens]}", EXIT_OK)

    ideal = _require_monomial(doc, command, S)
    schedule = _parse_schedule(args.schedule, doc)
    box_cap = doc.option_int("box_cap", args.box_cap, 6)
    kappa = doc.option_int("kappa", args.kappa, 3)

    if command == "bfunction":
        res = bfunction(S, ideal, schedule=schedule, cap=box_cap)
        report = {"command": "bfunction", **_bfunction_json(res)}
        code = EXIT_OK if res.stabilized else EXIT_UNCERTIFIED
        tag = "certified" if res.stabilized else "NOT certified (cap hit)"
        return _emit(report, f"bfunction: b(s) = {res.b.format('s')} [{tag}]", code)

    if command == "lct":
        value = lct(S, ideal)
        report = {"command": "lct", "lct": frac_str(value)}
        return _emit(report, f"lct: {frac_str(value)}", EXIT_OK)

    if command == "multiplier":
        alpha = doc.option_rational("alpha", args.alpha)
        if alpha is None:
            raise DocumentError("multiplier needs --alpha (or options.alpha)")
        mode = args.mode or doc.options.get("mode", "relint")
        doublings = doc.option_int("box_cap", args.box_cap, 1)
        res = multiplier_ideal(S, ideal, alpha, mode=mode, doublings=doublings)
        report = {
            "command": "multiplier",
            "alpha": frac_str(res.alpha),
            "mode": res.mode,
            "generators": [list(v) for v in res.generators],
            "box_used": list(res.box_used),
            "stabilized": res.stabilized,
        }
        code = EXIT_OK if res.stabilized else EXIT_UNCERTIFIED
        return _emit(
            report,
            f"multiplier(alpha={frac_str(res.alpha)}, {res.mode}): "
            f"{[tuple(v) for v in res.generators]}",
            code,
        )

    if command == "jumping":
        window = doc.option_rational("max", args.max)
        if window is None:
            raise DocumentError("jumping needs --max (or options.max)")
        jr = jumping_coefficients(S, ideal, window, kappa=kappa)
        report = {"command": "jumping", **_jumping_json(jr)}
        code = EXIT_OK if not jr.unresolved else EXIT_UNCERTIFIED
        vals = ", ".join(frac_str(a) for a, _ in jr.jumping)
        return _emit(report, f"jumping up to {frac_str(window)}: {{{vals}}}", code)

    if command == "verify":
        cr = verify_correspondence(S, ideal, schedule=schedule, cap=box_cap, kappa=kappa)
        report = {
            "command": "verify",
            "verdict": cr.verdict,
            "lct": frac_str(cr.lct),
            "bfunction": _bfunction_json(cr.bfunction_result),
            "jumping": None if cr.jumping_report is None else _jumping_json(cr.jumping_report),
            "roots_negated": _roots_json(cr.roots_negated),
            "jumping_in_window": [frac_str(a) for a in cr.jumping_in_window],
            "failures": list(cr.failures),
            "notes": list(cr.notes),
        }
        code = {
            "PASS": EXIT_OK,
            "INCONCLUSIVE": EXIT_UNCERTIFIED,
            "FAIL": EXIT_FAIL,
        }[cr.verdict]
        return _emit(report, f"verify: {cr.verdict} (lct {frac_str(cr.lct)})", code)

    raise DocumentError(f"unknown command {command!r}")


def _parse_schedule(flag: Optional[str], doc: Document) -> tuple[int, ...]:
    if flag is not None:
        try:
            parts = tuple(int(x) for x in flag.split(","))
        except ValueError as exc:
            raise DocumentError(f"bad --schedule {flag!r}") from exc
        if not parts:
            raise DocumentError("empty --schedule")
        return parts
    sched = doc.options.get("schedule")
    if sched is not None:
        return tuple(_int_list(sched, "schedule"))
    return (1, 2, 3, 4)


# ---------------------------------------------------------------------------
# argument parsing and entry point
# ---------------------------------------------------------------------------

COMMANDS = (
    "check",
    "facets",
    "transport",
    "bfunction",
    "lct",
    "multiplier",
    "jumping",
    "verify",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricbsato",
        description=(
            "Exact b-functions, multiplier ideals and jumping coefficients "
            "for monomial ideals on normal toric varieties."
        ),
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("document", help="problem document (JSON)")
    parser.add_argument("--alpha", help="parameter value, e.g. 2/3")
    parser.add_argument("--max", help="upper end of the jumping window, e.g. 4/3")
    parser.add_argument("--mode", choices=("relint", "closed"))
    parser.add_argument(
        "--box-cap",
        type=int,
        dest="box_cap",
        help="truncation cap (bfunction/verify) or enumeration doublings (multiplier)",
    )
    parser.add_argument("--kappa", type=int, help="window growth factor for witness search")
    parser.add_argument(
        "--schedule", help="comma-separated truncation box bounds, e.g. 1,2,3,4"
    )
    parser.add_argument(
        "--assume-normal",
        action="store_true",
        help="skip the normality check (results are conditional on normality)",
    )
    parser.add_argument(
        "--check-normal",
        action="store_true",
        help="verify normality before running (may be slow for large generators)",
    )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = load_document(args.document)
    except DocumentError as exc:
        return _error(args.command, EXIT_MALFORMED, str(exc))
    try:
        return run(args.command, doc, args)
    except DocumentError as exc:
        return _error(args.command, EXIT_MALFORMED, str(exc))
    except (ValueError, StructuralError) as exc:
        if isinstance(exc, StructuralError):
            return _error(args.command, EXIT_STRUCTURAL, str(exc))
        return _error(args.command, EXIT_MALFORMED, str(exc))
    except TruncationExhausted as exc:
        return _error(args.command, EXIT_UNCERTIFIED, str(exc))


if __name__ == "__main__":
    sys.exit(main())
