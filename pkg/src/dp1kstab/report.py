"""JSON, CSV and text renderings of decompositions, alpha reports and verdicts.

Rationals are written as exact ``p/q`` strings (``p`` for integers). Columns
ending in ``_approx`` carry 12-significant-digit decimals and are approximate.
"""
from __future__ import annotations

from fractions import Fraction

from .alpha import AlphaReport, FormulaValue
from .cones import Decomposition
from .kstab import Verdict
from .lattice import DivClass, format_class

SCHEMA = "1"


def q(x: Fraction) -> str:
    return str(Fraction(x))


def approx(x: Fraction) -> str:
    return f"{float(x):.12g}"


def class_str(x: DivClass) -> str:
    return ",".join(q(c) for c in x.coeffs)


def formula_dict(f: FormulaValue) -> dict:
    out = {"value": q(f.value), "branch": f.branch.name, "tag": f.tag}
    if f.candidates:
        out["candidates"] = [q(c) for c in f.candidates]
    return out


def decomposition_dict(d: Decomposition) -> dict:
    out = {
        "mu": q(d.mu),
        "kind": d.kind.value,
        "subtype": d.subtype.value if d.subtype else None,
        "r": d.r,
        "a_sorted": [q(c) for c in d.a_sorted],
        "a": q(d.a),
        "s_A": q(d.s_A),
        "exceptionals": [class_str(c.cls) for c in d.exceptionals],
        "fiber_class": class_str(d.fiber_class) if d.fiber_class is not None else None,
        "face": [c.label for c in d.face],
    }
    if d.notes:
        out["notes"] = list(d.notes)
    return out


def alpha_dict(r: AlphaReport, normalization: str = "muA") -> dict:
    out = {
        "closed_form": formula_dict(r.closed),
        "oracle_value": q(r.oracle.value),
        "oracle_M": q(r.oracle.M),
        "oracle_argmax": r.oracle.argmax.label,
        "oracle_argmax_class": class_str(r.oracle.argmax.cls),
        "agree": r.agree,
        "mult_bound": q(r.mult_bound),
        "exceptional_mult": q(r.exceptional_mult),
        "lemma_bound_holds": r.lemma_bound_holds,
    }
    if normalization in ("A", "both"):
        out["alpha_c_A_closed"] = q(r.closed_form_of_A)
        out["alpha_c_A_oracle"] = q(r.alpha_c_of_A)
    if r.p1p1 is not None:
        out["p1xp1"] = {
            "literal": formula_dict(r.p1p1.literal),
            "relabel_by_m": [q(v.value) for v in r.p1p1.by_m],
            "relabel_m_consistent": r.p1p1.m_consistent,
            "literal_matches_relabel": r.p1p1.literal_matches_relabel,
            "literal_agrees_with_oracle": r.p1p1.literal.value == r.oracle.value,
            "relabel_agrees_with_oracle": r.p1p1.designated.value == r.oracle.value,
        }
    return out


def verdict_dict(v: Verdict, normalization: str = "muA") -> dict:
    out = {
        "outcome": v.outcome.value,
        "nu": q(v.nu),
        "nef_condition": v.nef_condition,
        "witness": v.witness.label if v.witness else None,
        "witness_class": class_str(v.witness.cls) if v.witness else None,
        "witness_pairing": q(v.witness_pairing) if v.witness_pairing is not None else None,
        "alpha_lower_bound": q(v.alpha_lower_bound),
        "alpha_condition": v.alpha_condition,
        "z_class_inequality": v.z_class,
    }
    if normalization in ("muA", "both"):
        out["nu_muA"] = q(v.nu_muA)
        out["alpha_lower_bound_muA"] = q(v.alpha_lower_bound_muA)
    out["trace"] = [{"check": c.name, "value": _plain(c.value), "detail": c.detail} for c in v.trace]
    return out


def _plain(x):
    if isinstance(x, Fraction):
        return q(x)
    if isinstance(x, DivClass):
        return class_str(x)
    if isinstance(x, tuple):
        return [_plain(y) for y in x]
    return x


def envelope(command: str, A: DivClass, **sections) -> dict:
    out = {"schema": SCHEMA, "command": command, "input_class": class_str(A)}
    out.update(sections)
    return out


# alpha_c columns are muA-normalised unless normalization is "A"; nu is always nu(A)
CSV_COLUMNS = (
    ["mu", "kind"]
    + [f"a{i}" for i in range(1, 9)]
    + ["a", "s_A", "alpha_c_closed", "alpha_c_oracle", "nu", "nef", "verdict"]
)


def csv_header(n_dirs: int, normalization: str) -> list[str]:
    cols = [f"t{k + 1}" for k in range(n_dirs)] + list(CSV_COLUMNS)
    if normalization == "both":
        cols += ["alpha_c_A_oracle", "nu_muA"]
    cols += ["alpha_c_oracle_approx", "nu_approx"]
    return cols


def csv_row(coords, v: Verdict | None, normalization: str) -> list[str]:
    row = [q(t) for t in coords]
    if v is None:
        blanks = len(CSV_COLUMNS) - 1
        row += [""] * blanks + ["NotAmple"]
        if normalization == "both":
            row += ["", ""]
        return row + ["", ""]
    d, r = v.decomposition, v.alpha
    row += [q(d.mu), d.label] + [q(c) for c in d.a_sorted]
    closed, oracle = (r.closed_form_of_A, r.alpha_c_of_A) if normalization == "A" else (r.closed_form, r.oracle_value)
    row += [q(d.a), q(d.s_A), q(closed), q(oracle), q(v.nu), str(v.nef_condition).lower(), v.outcome.value]
    if normalization == "both":
        row += [q(r.alpha_c_of_A), q(v.nu_muA)]
    return row + [approx(oracle), approx(v.nu)]


# --- text ---------------------------------------------------------------


def decomposition_text(d: Decomposition) -> str:
    lines = [
        f"mu          = {q(d.mu)}",
        f"contraction = {d.label} (r = {d.r})",
        f"a_sorted    = [{', '.join(q(c) for c in d.a_sorted)}]",
        f"a           = {q(d.a)}",
        f"s_A         = {q(d.s_A)}",
    ]
    for c, e in zip(d.a_sorted, d.exceptionals):
        lines.append(f"  {q(c):>8} * [{format_class(e.cls)}]")
    if d.fiber_class is not None:
        lines.append(f"  {q(d.a):>8} * B = [{format_class(d.fiber_class)}]")
    return "\n".join(lines)


def alpha_text(r: AlphaReport) -> str:
    lines = [
        f"alpha_c(muA) closed form = {q(r.closed_form)}  ({r.closed.tag})",
        f"alpha_c(muA) oracle      = {q(r.oracle_value)}  (M = {q(r.oracle.M)} at {r.oracle.argmax.label})",
        f"agree                    = {r.agree}",
        f"multiplicity bound       = {q(r.mult_bound)}",
    ]
    if r.closed.candidates:
        lines.append("  candidates: " + ", ".join(q(c) for c in r.closed.candidates))
    if r.p1p1 is not None:
        lines.append(f"  P1xP1 literal reading  = {q(r.p1p1.literal.value)}")
        lines.append("  P1xP1 relabel m=1..7   = " + ", ".join(q(v.value) for v in r.p1p1.by_m))
    return "\n".join(lines)


def verdict_text(v: Verdict) -> str:
    width = max(len(c.name) for c in v.trace)
    lines = []
    for c in v.trace:
        val = _plain(c.value)
        if isinstance(val, list):
            val = "[" + ", ".join(map(str, val)) + "]"
        extra = f"   # {c.detail}" if c.detail else ""
        lines.append(f"{c.name:<{width}} : {val}{extra}")
    return "\n".join(lines)
