"""Closed-form corner values of the determinants behind the gradient signs.

Every determinant entering the gradient factorization is multilinear in
the adaptive player's entries, so its sign over the cube is decided at the
corners.  This module transcribes the closed-form corner values and checks
each one against direct determinant evaluation.

Legend for the context fields used in the cell expressions: ``hX`` is
1 - X, ``dpJ`` is 1 - delta*pJ, ``ddpJ`` is 1 - delta^2*pJ, ``hd`` is
1 - delta, ``hd2`` is 1 - delta^2, ``th`` is T + S, and ``tm2`` is
2 - (T + S).

Tables 1 and 2 hold for any opponent strategy; tables 3, 4, and 5
substitute the enforcer consistency relation during simplification, so
their closed forms match direct evaluation only when ``p`` is a ZD
strategy (table 5 additionally fixes p0 = p1 = 1).
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import MismatchError
from .game import PayoffParams, strategy_tuple, validate_delta
from .gradients import minor_dets, reduced_det_q0, reduced_dets
from .payoffs import state_determinant
from .zd import NotZD, recover_zd

__all__ = [
    "CellReport",
    "TABLE1",
    "TABLE2",
    "TABLE3",
    "TABLE4",
    "TABLE5",
    "corner_table",
    "table_report",
    "verify_tables",
    "applicable_tables",
]


class _Ctx(NamedTuple):
    p0: float
    p1: float
    p2: float
    p3: float
    p4: float
    hp0: float
    hp1: float
    hp2: float
    hp3: float
    hp4: float
    dp1: float
    dp2: float
    dp3: float
    dp4: float
    ddp1: float
    ddp2: float
    ddp3: float
    ddp4: float
    d: float
    d2: float
    d3: float
    hd: float
    hd2: float
    th: float
    tm2: float


def _ctx(p, delta: float, theta: float) -> _Ctx:
    p0, p1, p2, p3, p4 = p
    d = delta
    return _Ctx(
        p0=p0, p1=p1, p2=p2, p3=p3, p4=p4,
        hp0=1.0 - p0, hp1=1.0 - p1, hp2=1.0 - p2, hp3=1.0 - p3, hp4=1.0 - p4,
        dp1=1.0 - d * p1, dp2=1.0 - d * p2, dp3=1.0 - d * p3, dp4=1.0 - d * p4,
        ddp1=1.0 - d * d * p1, ddp2=1.0 - d * d * p2,
        ddp3=1.0 - d * d * p3, ddp4=1.0 - d * d * p4,
        d=d, d2=d * d, d3=d * d * d, hd=1.0 - d, hd2=1.0 - d * d,
        th=theta, tm2=2.0 - theta,
    )


# --- Table 1: the normalizer at the corners of (q1, q2, q3, q4) -------------

TABLE1 = {
    (0, 0, 0, 0): lambda c: c.dp2 + c.d * c.p4,
    (0, 0, 0, 1): lambda c: c.d2 * c.p1 * c.p4 + (1 + c.d) * c.dp2 + c.d2 * c.p3 * c.hp4,
    (0, 0, 1, 0): lambda c: c.ddp1 * c.p2 + c.hp2 * c.ddp3 + c.d * (1 + c.d) * c.p4,
    (0, 0, 1, 1): lambda c: (1 + c.d) * (1 - c.d2 * (c.p1 - c.p3) * (c.p2 - c.p4)),
    (0, 1, 0, 0): lambda c: (c.dp2 + c.d * c.p4) * (c.d * c.p3 + c.hd),
    (0, 1, 0, 1): lambda c: c.d3 * c.p1 * c.p3 + c.dp2 * (c.ddp4 + c.d * (1 + c.d) * c.p3)
    + c.d2 * c.hd * c.p1 * c.p4,
    (0, 1, 1, 0): lambda c: c.d * c.ddp1 * c.p3 + c.d * (c.ddp2 + c.d * (1 + c.d) * c.p3) * c.p4
    + c.hd * (1 - c.d2 * c.p1 * c.p2),
    (0, 1, 1, 1): lambda c: c.hd * (1 + c.d) + c.d2 * c.p1 * c.hp2
    + c.d2 * c.hp1 * c.hp4 + c.d * (1 + c.d) * c.p3,
    (1, 0, 0, 0): lambda c: c.dp1 * (c.dp2 + c.d * c.p4),
    (1, 0, 0, 1): lambda c: c.dp1 * ((1 + c.d) * c.dp2 + c.d2 * c.p3)
    + c.d2 * (c.d * c.hp2 + c.hd * c.hp3) * c.p4,
    (1, 0, 1, 0): lambda c: c.dp1 * (c.ddp3 + c.d * (1 + c.d) * c.p4)
    + c.d3 * c.p2 * c.p4 + c.d2 * c.hd * c.p2 * c.p3,
    (1, 0, 1, 1): lambda c: (1 + c.d) * c.dp1 + c.d2 * c.p2 * c.p3 + c.d2 * c.hp3 * c.p4,
    (1, 1, 0, 0): lambda c: c.hd * (c.dp2 + c.d * c.p4) * (c.dp1 + c.d * c.p3),
    (1, 1, 0, 1): lambda c: (c.dp1 + c.d * c.p3) * c.dp2,
    (1, 1, 1, 0): lambda c: (c.dp1 + c.d * c.p3) * (c.d * c.p4 + c.hd),
    (1, 1, 1, 1): lambda c: c.dp1 + c.d * c.p3,
}


# --- Table 2: sign-adjusted minors at the corners of the other four entries -
# Key: values of (q_j, j != ell) in increasing j (q0 included).
# Value: printed columns ((-1)**ell * minor_ell) for ell = 1..4.

TABLE2 = {
    (0, 0, 0, 0): (
        lambda c: 0.0,
        lambda c: 0.0,
        lambda c: c.d * c.p4 + c.hd * c.p0,
        lambda c: c.d * c.hp2 + c.hd * c.hp0,
    ),
    (0, 0, 0, 1): (
        lambda c: c.d * c.p4 * (c.d * c.hp2 + c.hd * c.hp0),
        lambda c: c.d * c.hp4 * (c.d * c.hp2 + c.hd * c.hp0),
        lambda c: c.d2 * (c.p1 * c.p4 + c.p3 * c.hp4) + c.hd2 * c.p0,
        lambda c: c.d2 * (c.hp1 * c.p2 + c.hp2 * c.hp3) + c.hd2 * c.hp0,
    ),
    (0, 0, 1, 0): (
        lambda c: c.d * c.p2 * (c.d * c.p4 + c.hd * c.p0),
        lambda c: c.d * c.hp2 * (c.d * c.p4 + c.hd * c.p0),
        lambda c: (c.d * c.p3 + c.hd) * (c.d * c.p4 + c.hd * c.p0),
        lambda c: (c.d * c.p3 + c.hd) * (c.d * c.hp2 + c.hd * c.hp0),
    ),
    (0, 0, 1, 1): (
        lambda c: c.d3 * (c.p2 * c.p3 + c.hp3 * c.p4) + c.d * c.hd2 * (c.p0 * c.p2 + c.hp0 * c.p4),
        lambda c: c.d3 * (c.p1 * c.hp2 + c.hp1 * c.hp4) + c.d * c.hd2 * (c.p0 * c.hp2 + c.hp0 * c.hp4),
        lambda c: c.d2 * c.p1 * (c.d * c.p3 + c.hd * c.p4) + c.p0 * (c.hd * c.ddp4 + c.d * c.hd2 * c.p3),
        lambda c: c.d2 * c.hp1 * (c.d * c.p3 + c.hd * c.p2) + c.hp0 * (c.hd * c.ddp2 + c.d * c.hd2 * c.p3),
    ),
    (0, 1, 0, 0): (
        lambda c: 0.0,
        lambda c: 0.0,
        lambda c: c.dp1 * (c.d * c.p4 + c.hd * c.p0),
        lambda c: c.dp1 * (c.d * c.hp2 + c.hd * c.hp0),
    ),
    (0, 1, 0, 1): (
        lambda c: c.d * (c.d * c.hp2 + c.hd * c.hp0) * (c.d * c.p3 + c.hd * c.p4),
        lambda c: c.d * (c.d * c.hp2 + c.hd * c.hp0) * (c.d * c.hp1 + c.hd * c.hp4),
        lambda c: c.d2 * c.p3 * (c.d * c.hp1 + c.hd * c.hp4) + c.p0 * (c.hd2 * c.dp1 + c.d2 * c.hd * c.p4),
        lambda c: c.d2 * c.hp3 * (c.d * c.hp1 + c.hd * c.hp2) + c.hp0 * (c.hd2 * c.dp1 + c.d2 * c.hd * c.p2),
    ),
    (0, 1, 1, 0): (
        lambda c: c.d * (c.d * c.p4 + c.hd * c.p0) * (c.d * c.p3 + c.hd * c.p2),
        lambda c: c.d * (c.d * c.p4 + c.hd * c.p0) * (c.d * c.hp1 + c.hd * c.hp2),
        lambda c: c.hd * (c.d * c.p4 + c.hd * c.p0) * (c.d * c.p3 + c.dp1),
        lambda c: c.hd * (c.d * c.hp2 + c.hd * c.hp0) * (c.d * c.p3 + c.dp1),
    ),
    (0, 1, 1, 1): (
        lambda c: c.d2 * c.p3 + c.d * c.hd * (c.p0 * c.p2 + c.hp0 * c.p4),
        lambda c: c.d2 * c.hp1 + c.d * c.hd * (c.hp0 * c.hp4 + c.p0 * c.hp2),
        lambda c: c.hd * c.p0 * (c.dp1 + c.d * c.p3),
        lambda c: c.hd * c.hp0 * (c.dp1 + c.d * c.p3),
    ),
    (1, 0, 0, 0): (
        lambda c: c.hd * c.p0 * (c.dp2 + c.d * c.p4),
        lambda c: c.hd * c.hp0 * (c.dp2 + c.d * c.p4),
        lambda c: c.d2 * c.p4 + c.d * c.hd * (c.hp0 * c.p3 + c.p0 * c.p1),
        lambda c: c.d2 * c.hp2 + c.d * c.hd * (c.hp0 * c.hp3 + c.p0 * c.hp1),
    ),
    (1, 0, 0, 1): (
        lambda c: c.d2 * c.p4 * (c.d * c.hp2 + c.hd * c.hp3) + c.p0 * (c.hd2 * c.dp2 + c.d2 * c.hd * c.p3),
        lambda c: c.d2 * c.hp4 * (c.d * c.hp2 + c.hd * c.hp1) + c.hp0 * (c.hd2 * c.dp2 + c.d2 * c.hd * c.p1),
        lambda c: c.d3 * (c.p1 * c.p4 + c.p3 * c.hp4) + c.d * c.hd2 * (c.p0 * c.p1 + c.hp0 * c.p3),
        lambda c: c.d3 * (c.hp1 * c.p2 + c.hp2 * c.hp3) + c.d * c.hd2 * (c.p0 * c.hp1 + c.hp0 * c.hp3),
    ),
    (1, 0, 1, 0): (
        lambda c: c.d2 * c.p2 * (c.d * c.p4 + c.hd * c.p3) + c.p0 * (c.hd * c.ddp3 + c.d * c.hd2 * c.p4),
        lambda c: c.d2 * c.hp2 * (c.d * c.p4 + c.hd * c.p1) + c.hp0 * (c.hd * c.ddp1 + c.d * c.hd2 * c.p4),
        lambda c: c.d * (c.d * c.p4 + c.hd * c.p1) * (c.d * c.p3 + c.hd * c.p0),
        lambda c: c.d * (c.d * c.hp2 + c.hd * c.hp1) * (c.d * c.p3 + c.hd * c.p0),
    ),
    (1, 0, 1, 1): (
        lambda c: c.d2 * (c.hp3 * c.p4 + c.p2 * c.p3) + c.hd2 * c.p0,
        lambda c: c.d2 * (c.hp1 * c.hp4 + c.p1 * c.hp2) + c.hd2 * c.hp0,
        lambda c: c.d2 * c.p1 * c.p3 + c.d * c.hd * c.p0 * c.p1,
        lambda c: c.d2 * c.hp1 * c.p3 + c.d * c.hd * c.p0 * c.hp1,
    ),
    (1, 1, 0, 0): (
        lambda c: c.hd * (c.d * c.p3 + c.hd * c.p0) * (c.d * c.p4 + c.dp2),
        lambda c: c.hd * (c.d * c.hp1 + c.hd * c.hp0) * (c.d * c.p4 + c.dp2),
        lambda c: c.d * (c.d * c.hp1 + c.hd * c.hp0) * (c.d * c.p4 + c.hd * c.p3),
        lambda c: c.d * (c.d * c.hp1 + c.hd * c.hp0) * (c.d * c.hp2 + c.hd * c.hp3),
    ),
    (1, 1, 0, 1): (
        lambda c: c.dp2 * (c.d * c.p3 + c.hd * c.p0),
        lambda c: c.dp2 * (c.d * c.hp1 + c.hd * c.hp0),
        lambda c: c.d * c.p3 * (c.d * c.hp1 + c.hd * c.hp0),
        lambda c: c.d * c.hp3 * (c.d * c.hp1 + c.hd * c.hp0),
    ),
    (1, 1, 1, 0): (
        lambda c: (c.d * c.p3 + c.hd * c.p0) * (c.d * c.p4 + c.hd),
        lambda c: (c.d * c.hp1 + c.hd * c.hp0) * (c.d * c.p4 + c.hd),
        lambda c: 0.0,
        lambda c: 0.0,
    ),
    (1, 1, 1, 1): (
        lambda c: c.d * c.p3 + c.hd * c.p0,
        lambda c: c.d * c.hp1 + c.hd * c.hp0,
        lambda c: 0.0,
        lambda c: 0.0,
    ),
}


# --- Table 3: sign-adjusted reduced determinants at the corners of the
# three conditional entries other than ell (first-round entry drops out).

TABLE3 = {
    (0, 0, 0): (
        lambda c: c.p1 + c.th * c.hp1,
        lambda c: c.p3 + c.th * c.hp3,
        lambda c: c.p2 + c.th * c.hp2,
        lambda c: c.p4 + c.th * c.hp4,
    ),
    (0, 0, 1): (
        lambda c: c.tm2 * c.p1 + c.d * c.hp3 + c.d * (c.p1 - c.p2) + c.hd * c.hp1,
        lambda c: c.p3 + c.th * c.hp3 + c.d * c.tm2 * (c.p3 - c.p4),
        lambda c: c.tm2 * c.p2 + c.d * c.hp3 + c.d * c.th * (c.p1 - c.p2) + c.hd * c.hp2,
        lambda c: c.d * c.p2 + c.th * c.hp4 + c.hd * c.p4,
    ),
    (0, 1, 0): (
        lambda c: c.th * c.hp1 + c.d * c.p2 + c.hd * c.p1,
        lambda c: c.d * c.p2 + c.th * c.hp3 + c.hd * c.p3,
        lambda c: c.th * c.hp2 + c.d * c.p3 + c.hd * c.p2,
        lambda c: c.d * c.p3 + c.th * c.hp4 + c.hd * c.p4,
    ),
    (0, 1, 1): (
        lambda c: c.tm2 * c.p1 + c.d * c.hp3 + c.hd * c.hp1,
        lambda c: c.d * c.p2 + c.th * c.hp3 + c.hd * c.p3 + c.d * c.tm2 * (c.p3 - c.p4),
        lambda c: c.hp2 + c.tm2 * c.p2 + c.d * c.th * (c.p1 - c.p2),
        lambda c: c.d * c.p2 + c.th * c.hp3 + (c.d + c.th) * (c.p3 - c.p4) + c.hd * c.p4,
    ),
    (1, 0, 0): (
        lambda c: c.th * c.hp1 + c.d * c.p3 + c.hd * c.p1,
        lambda c: c.d * c.th * c.hp1 + c.p3 + c.hd * c.th * c.hp3,
        lambda c: c.d * c.th * c.hp1 + c.p2 + c.hd * c.th * c.hp2,
        lambda c: c.d * c.th * c.hp1 + c.p4 + c.hd * c.th * c.hp4,
    ),
    (1, 0, 1): (
        lambda c: c.tm2 * c.p1 + c.d * c.hp2 + c.hd * c.hp1,
        lambda c: c.d * c.hp2 + c.tm2 * c.p3 + c.hd * c.hp3,
        lambda c: c.tm2 * c.p2 + c.d * c.hp3 + c.hd * c.hp2,
        lambda c: c.d * c.th * c.hp1 + c.d * c.p2 + c.hd * c.th * c.hp4 + c.hd * c.p4,
    ),
    (1, 1, 0): (
        lambda c: c.hp1 + c.d * c.tm2 * c.p4 + c.hd * c.tm2 * c.p1,
        lambda c: c.hp3 + c.d * c.tm2 * c.p4 + c.hd * c.tm2 * c.p3,
        lambda c: c.hp2 + c.d * c.tm2 * c.p4 + c.hd * c.tm2 * c.p2,
        lambda c: c.d * c.hp2 + c.tm2 * c.p4 + c.hd * c.hp4,
    ),
    (1, 1, 1): (
        lambda c: c.hp1 + c.tm2 * c.p1,
        lambda c: c.hp3 + c.tm2 * c.p3,
        lambda c: c.hp2 + c.tm2 * c.p2,
        lambda c: c.hp4 + c.tm2 * c.p4,
    ),
}


# --- Table 4: first-round reduced determinant at the corners of
# (q1, q2, q3, q4); valid when p is a ZD strategy.

TABLE4 = {
    (0, 0, 0, 0): lambda c: c.p0 + c.th * c.hp0,
    (0, 0, 0, 1): lambda c: c.d * (c.th - 1.0) * c.p1 + c.d * (c.p1 - c.p2) + c.dp3
    + (1.0 - c.th + c.d * c.tm2) * c.p0,
    (0, 0, 1, 0): lambda c: c.d * c.p2 + c.th * c.hp0 + c.hd * c.p0,
    (0, 0, 1, 1): lambda c: c.d * c.th * c.p1 + c.dp3 + (1 + c.d) * (1.0 - c.th) * c.p0,
    (0, 1, 0, 0): lambda c: c.d * c.p3 + c.th * c.hp0 + c.hd * c.p0,
    (0, 1, 0, 1): lambda c: c.d * c.th * c.p1 + c.dp2 + (1 + c.d) * (1.0 - c.th) * c.p0,
    (0, 1, 1, 0): lambda c: c.th + c.d * c.p2 + c.d * c.p3 + (1.0 - 2.0 * c.d - c.th) * c.p0,
    (0, 1, 1, 1): lambda c: 1.0 + c.d * c.th * c.p1 + (1.0 - (1 + c.d) * c.th) * c.p0,
    (1, 0, 0, 0): lambda c: c.th * (c.hd * c.hp0 + c.d * c.hp1) + c.p0,
    (1, 0, 0, 1): lambda c: c.tm2 * c.p0 + c.d * (c.hp2 + c.hp3) + (1.0 - 2.0 * c.d) * c.hp0,
    (1, 0, 1, 0): lambda c: c.tm2 * (c.hd * c.p0 + c.d * c.p4) + c.hd * c.hp0 + c.d * c.hp3,
    (1, 0, 1, 1): lambda c: c.tm2 * c.p0 + c.hd * c.hp0 + c.d * c.hp3,
    (1, 1, 0, 0): lambda c: c.th * (c.hd * c.hp0 + c.d * c.hp1) + c.hd * c.p0 + c.d * c.p3,
    (1, 1, 0, 1): lambda c: c.tm2 * c.p0 + c.hd * c.hp0 + c.d * c.hp2,
    (1, 1, 1, 0): lambda c: c.tm2 * (c.hd * c.p0 + c.d * c.p4) + c.hp0,
    (1, 1, 1, 1): lambda c: c.tm2 * c.p0 + c.hp0,
}


# --- Table 5: first-round reduced determinant at the corners of
# (q2, q3, q4) with q1 = 1, for ZD p with p0 = p1 = 1.  Every cell is
# positive because 0 < theta < 2.

TABLE5 = {
    (0, 0, 0): lambda c: c.tm2 * (c.hd + c.d * c.p4) + c.d * (c.hp2 + c.hp3),
    (0, 0, 1): lambda c: c.tm2 + c.d * c.hp2 + c.d * c.hp3,
    (0, 1, 0): lambda c: c.tm2 * (c.hd + c.d * c.p4) + c.d * c.hp3,
    (0, 1, 1): lambda c: c.tm2 + c.d * c.hp3,
    (1, 0, 0): lambda c: c.tm2 * (c.hd + c.d * c.p4) + c.d * c.hp2,
    (1, 0, 1): lambda c: c.tm2 + c.d * c.hp2,
    (1, 1, 0): lambda c: c.tm2 * (c.hd + c.d * c.p4),
    (1, 1, 1): lambda c: c.tm2,
}


class CellReport(NamedTuple):
    table: str
    corner: tuple
    column: str
    closed: float
    direct: float
    diff: float

    def label(self) -> str:
        corner = "(" + ",".join(str(v) for v in self.corner) + ")"
        return f"{self.table} {corner} {self.column}"


def corner_table(which: str, p, delta, params: PayoffParams) -> dict:
    """Closed-form values of one table, keyed by corner tuple.

    ``which`` is one of "1".."5".  Tables 1 and 4/5 map corner -> value;
    tables 2 and 3 map corner -> 4-tuple of the printed signed columns.
    """
    c = _ctx(strategy_tuple(p), validate_delta(delta), params.theta)
    src = {"1": TABLE1, "2": TABLE2, "3": TABLE3, "4": TABLE4, "5": TABLE5}[which]
    out = {}
    for corner, cell in src.items():
        if isinstance(cell, tuple):
            out[corner] = tuple(f(c) for f in cell)
        else:
            out[corner] = cell(c)
    return out


def _insert(corner, position, value):
    vals = list(corner)
    vals.insert(position, value)
    return tuple(vals)


def _report_table1(p, delta, params):
    c = _ctx(p, delta, params.theta)
    out = []
    for corner in sorted(TABLE1):
        closed = TABLE1[corner](c)
        q = (0.5, *corner)
        direct = state_determinant(p, q, delta, (1.0, 1.0, 1.0, 1.0))
        out.append(CellReport("Table 1", corner, "D", closed, direct, abs(closed - direct)))
    return out


def _report_table2(p, delta, params):
    c = _ctx(p, delta, params.theta)
    out = []
    for corner in sorted(TABLE2):
        cells = TABLE2[corner]
        for ell in range(1, 5):
            closed = cells[ell - 1](c)
            q = _insert(corner, ell, 0.5)
            direct = minor_dets(p, q, delta)[ell - 1]
            signed = direct if ell % 2 == 0 else -direct
            out.append(
                CellReport("Table 2", corner, f"M{ell}", closed, signed, abs(closed - signed))
            )
    return out


def _report_table3(p, delta, params):
    c = _ctx(p, delta, params.theta)
    out = []
    for corner in sorted(TABLE3):
        cells = TABLE3[corner]
        for ell in range(1, 5):
            closed = cells[ell - 1](c)
            q = _insert(corner, ell - 1, 0.7)  # place free q_ell among q1..q4
            q = (0.3, *q)  # free q0
            direct = reduced_dets(p, q, delta, params)[ell - 1]
            signed = direct if ell % 2 == 0 else -direct
            out.append(
                CellReport("Table 3", corner, f"d{ell}", closed, signed, abs(closed - signed))
            )
    return out


def _report_table4(p, delta, params):
    c = _ctx(p, delta, params.theta)
    out = []
    for corner in sorted(TABLE4):
        closed = TABLE4[corner](c)
        q = (0.3, *corner)
        direct = reduced_det_q0(p, q, delta, params)
        out.append(CellReport("Table 4", corner, "d0", closed, direct, abs(closed - direct)))
    return out


def _report_table5(p, delta, params):
    c = _ctx(p, delta, params.theta)
    out = []
    for corner in sorted(TABLE5):
        closed = TABLE5[corner](c)
        q = (0.3, 1.0, *corner)
        direct = reduced_det_q0(p, q, delta, params)
        out.append(CellReport("Table 5", corner, "d0", closed, direct, abs(closed - direct)))
    return out


_REPORTERS = {
    "1": _report_table1,
    "2": _report_table2,
    "3": _report_table3,
    "4": _report_table4,
    "5": _report_table5,
}


def applicable_tables(p, delta, params: PayoffParams) -> tuple[str, ...]:
    """Tables whose closed forms are exact for this ``p``.

    Tables 3, 4, and 5 substitute the enforcer consistency relation, so
    they apply only to ZD strategies; table 5 further needs p0 = p1 = 1.
    """
    tables = ["1", "2"]
    try:
        recovered = recover_zd(p, delta, params)
    except Exception:
        recovered = NotZD(residual=float("inf"))
    if not isinstance(recovered, NotZD):
        tables.extend(["3", "4"])
        pt = strategy_tuple(p)
        if abs(pt[0] - 1.0) <= 1e-12 and abs(pt[1] - 1.0) <= 1e-12:
            tables.append("5")
    return tuple(tables)


def table_report(p, delta, params: PayoffParams, tables=None) -> list[CellReport]:
    """Per-cell comparison of closed forms against direct determinant values."""
    pt = strategy_tuple(p)
    delta = validate_delta(delta)
    if tables is None:
        tables = applicable_tables(pt, delta, params)
    return [r for t in tables for r in _REPORTERS[str(t)](pt, delta, params)]


def verify_tables(p, delta, params: PayoffParams, tables=None, tol: float = 1e-12,
                  raise_on_mismatch: bool = False) -> list[CellReport]:
    """Return the cells whose closed form and direct value differ beyond ``tol``."""
    mismatches = [r for r in table_report(p, delta, params, tables) if r.diff > tol]
    if mismatches and raise_on_mismatch:
        first = mismatches[0]
        raise MismatchError(
            f"{first.label()}: closed {first.closed!r} != direct {first.direct!r}",
            cell=(first.table, first.corner, first.column),
        )
    return mismatches
