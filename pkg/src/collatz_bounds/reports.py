"""CSV and key=value report emission (fixed column orders, 12 significant digits)."""

from __future__ import annotations

import math
import os
from fractions import Fraction

from . import bounds as bnd
from .harness import EnumerationResult, JointTable, OComparison, SweepResult, alpha_table


def fmt_real(v: float) -> str:
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return "nan"
    return f"{float(v):.12g}"


def _write_rows(path: str, header: str, rows) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(header + "\n")
            for row in rows:
                fh.write(",".join(str(c) for c in row) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def write_hist_csv(enum: EnumerationResult, path: str) -> None:
    rows = ((enum.a_min + i, c) for i, c in enumerate(enum.a_counts))
    _write_rows(path, "a,count", rows)


def write_joint_csv(joint: JointTable, path: str) -> None:
    rows = ((v, joint.a1_min + j, int(joint.cells[i, j]))
            for i, v in enumerate(joint.v_values)
            for j in range(joint.cells.shape[1]))
    _write_rows(path, "v1,a1,count", rows)


def write_alpha_csv(joint: JointTable, path: str) -> None:
    alpha = alpha_table(joint)
    rows = ((v, joint.a1_min + j, fmt_real(alpha[i, j]))
            for i, v in enumerate(joint.v_values)
            for j in range(alpha.shape[1]))
    _write_rows(path, "v1,a1,alpha", rows)


def write_compare_csv(cmp: OComparison, path: str) -> None:
    cum_o = 0
    cum_o1 = Fraction(0)
    cum_o2 = 0.0
    rows = []
    for a, o, o1, o2 in zip(cmp.a, cmp.o, cmp.o1, cmp.o2):
        cum_o += o
        cum_o1 += o1
        cum_o2 += o2 if o2 is not None else 0.0
        ratio1 = float(o1) / o if o else float("nan")
        ratio2 = (o2 / o) if (o2 is not None and o) else float("nan")
        rows.append((a, o, fmt_real(float(o1)), fmt_real(o2) if o2 is not None else "nan",
                     fmt_real(ratio1), fmt_real(ratio2),
                     cum_o, fmt_real(float(cum_o1)), fmt_real(cum_o2)))
    _write_rows(path, "a,O,O1,O2,ratio1,ratio2,cumO,cumO1,cumO2", rows)


def write_sweep_csv(sweep: SweepResult, path: str) -> None:
    cum_n = sweep.cumulative_counts()
    cum_m2 = sweep.cumulative_m2()
    rows = ((b, sweep.counts[b], cum_n[b], fmt_real(sweep.m2_terms[b]), fmt_real(cum_m2[b]))
            for b in range(len(sweep.counts)))
    _write_rows(path, "b,N,cumN,M2,cumM2", rows)


def bounds_report(x: float) -> list[str]:
    """Key=value summary of the analytic quantities at x."""
    lines = [
        f"x={fmt_real(x)}",
        f"m2_closed={fmt_real(bnd.m2_closed(x))}",
        f"m3_closed={fmt_real(bnd.m3_closed(x))}",
        f"m2_coefficient={fmt_real(bnd.COEFFICIENT2)}",
        f"m3_coefficient={fmt_real(bnd.COEFFICIENT3)}",
        f"b_min={fmt_real(bnd.b_min_threshold(x))}",
        f"E_B={fmt_real(bnd.mean_closed(x))}",
        f"V_B={fmt_real(bnd.var_closed(x))}",
    ]
    # the two equivalent accountings of the b=0 term: sum from b=1 plus the
    # integer 1, and the folded form with the -1/2 constant
    b_soft = bnd.mean_closed(x) + 12 * math.sqrt(bnd.var_closed(x)) if x >= 2**10 else 64
    partial = 0.0
    for b in range(1, bnd.SERIES_B_CAP):
        term = bnd.m2_term(b, x)
        partial += term
        if b > b_soft and term < 1e-15 * partial:
            break
    lines.append(f"m2_partial_plus_one={fmt_real(1.0 + partial)}")
    lines.append(f"m2_partial_folded={fmt_real(1.5 * bnd.series_sum(math.log2(x), -4.0) - 0.5)}")
    if x >= 2**10:
        trunc = bnd.m2_truncated(x)
        skew, exkurt = bnd.normality_diagnostic(x)
        lines += [
            f"m2_truncated={fmt_real(trunc)}",
            f"m2_truncated_ratio={fmt_real(trunc / bnd.m2_closed(x))}",
            f"skewness={fmt_real(skew)}",
            f"excess_kurtosis={fmt_real(exkurt)}",
        ]
    return lines


def ensure_outdir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path
