"""Grid scans of the embedding problem over ``a`` at fixed ``b``."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .classes import YClass, best_class, e_family, enumerate_obstructive, r_family
from .cremona import reduce_packing
from .ech import cb_lower
from .exact import DomainError, as_rat, fmt_rat
from .rf import RF1_CLASS

SIG_DIGITS = 12
CSV_COLUMNS = ["a", "b", "volume", "cb_lower", "mu_best", "class", "certified"]
CSV_EXTRA = ["a_decimal", "cb_lower_decimal", "mu_best_decimal", "cb_k"]
RF2_CLASS = YClass(6, 3, [3] + [2] * 7)


def dec(x: Fraction) -> str:
    """``x`` rounded to 12 significant digits, computed from the exact value."""
    x = as_rat(x)
    with localcontext() as ctx:
        ctx.prec = SIG_DIGITS
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return f"{d:.{SIG_DIGITS}g}"


def dec_sqrt(x: Fraction) -> str:
    x = as_rat(x)
    with localcontext() as ctx:
        ctx.prec = SIG_DIGITS + 20
        root = (Decimal(x.numerator) / Decimal(x.denominator)).sqrt()
        ctx.prec = SIG_DIGITS
        root = +root
    return f"{root:.{SIG_DIGITS}g}"


def family_classes(a_max, n_max: int | None = None) -> list[YClass]:
    """``E_n`` up to where they can matter, ``R_n`` for n = 2..30, and the two
    classes that fix the RF-values at b = 1 and b = 2."""
    if n_max is None:
        n_max = int(as_rat(a_max)) + 2
    out = [e_family(n) for n in range(1, n_max + 1)]
    out += [r_family(n) for n in range(2, 31)]
    out += [RF1_CLASS, RF2_CLASS]
    return out


@dataclass
class ScanRow:
    a: Fraction
    b: Fraction
    cb_lower: Fraction
    cb_k: int
    mu_best: Fraction | None
    best_class: YClass | None
    certified: bool

    @property
    def volume_sq(self) -> Fraction:
        return self.a / (2 * self.b)

    @property
    def volume(self) -> str:
        return dec_sqrt(self.volume_sq)

    def csv_row(self) -> list[str]:
        mu = "" if self.mu_best is None else fmt_rat(self.mu_best)
        return [
            fmt_rat(self.a), fmt_rat(self.b), self.volume, fmt_rat(self.cb_lower), mu,
            "" if self.best_class is None else self.best_class.label(),
            "true" if self.certified else "false",
            dec(self.a), dec(self.cb_lower),
            "" if self.mu_best is None else dec(self.mu_best), str(self.cb_k),
        ]

    def to_json(self) -> dict:
        def pair(x):
            return None if x is None else {"exact": fmt_rat(x), "decimal": dec(x)}

        return {
            "a": pair(self.a),
            "b": pair(self.b),
            "volume": {"squared": fmt_rat(self.volume_sq), "decimal": self.volume},
            "cb_lower": pair(self.cb_lower),
            "cb_k": self.cb_k,
            "mu_best": pair(self.mu_best),
            "class": None if self.best_class is None else self.best_class.label(),
            "certified": self.certified,
        }


def grid(a_from, a_to, steps: int) -> list[Fraction]:
    a_from, a_to = as_rat(a_from), as_rat(a_to)
    if steps < 1 or not (1 <= a_from < a_to):
        raise DomainError("scan needs 1 <= a_from < a_to and steps >= 1")
    return [a_from + k * (a_to - a_from) / steps for k in range(steps + 1)]


def scan_row(b, a, classes: list[YClass] | None = None, d_max: int | None = None,
             kmax: int | None = None, max_moves: int | None = None) -> ScanRow:
    a, b = as_rat(a), as_rat(b)
    if classes is None:
        classes = enumerate_obstructive(b, a, d_max or 20)
    lower, k = cb_lower(a, b, kmax)
    mu_best, cls = best_class(classes, b, a)
    cert = reduce_packing(b, a, max_moves)
    return ScanRow(a, b, lower, k, mu_best if cls is not None else None, cls, cert.certified)


def _row_star(args):
    return scan_row(*args)


def cmd_scan(b, a_from, a_to, steps: int, class_source: str = "families", d_max: int = 20,
             kmax: int | None = None, threads: int = 1, max_moves: int | None = None) -> list[ScanRow]:
    """One row per exact grid point, returned in grid order."""
    b = as_rat(b)
    pts = grid(a_from, a_to, steps)
    if class_source == "families":
        fams = family_classes(pts[-1])
        jobs = [(b, a, fams, None, kmax, max_moves) for a in pts]
    elif class_source == "enumerate":
        jobs = [(b, a, None, d_max, kmax, max_moves) for a in pts]
    else:
        raise ValueError(f"unknown class source {class_source!r}")
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_row_star, jobs))
    return [_row_star(j) for j in jobs]


def rows_to_csv(rows: list[ScanRow]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(CSV_COLUMNS + CSV_EXTRA)
    for r in rows:
        wr.writerow(r.csv_row())
    return buf.getvalue()


def rows_to_json(rows: list[ScanRow]) -> str:
    return json.dumps([r.to_json() for r in rows], indent=2) + "\n"
