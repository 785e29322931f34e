"""Published values of the monotone discrepancy for n = 5..8.

Each entry lists the terms as printed, with ``rxk``/``ryk`` standing for the
k-th monotone cumulant of x and y.  They are summed and compared with the
engine output in the canonical polynomial ring.
"""

from __future__ import annotations

PUBLISHED: dict[int, list[str]] = {
    5: ["-1/12*rx2*ry2"],
    6: [
        "-1/4*rx2^2*ry2",
        "-1/4*rx2*ry2^2",
        "-1/3*rx2*ry3",
        "-1/3*rx3*ry2",
    ],
    7: [
        "-rx3*ry3",
        "-4/3*rx2^2*ry2^2",
        "7/180*rx2*ry2",
        "-19/12*rx2^2*ry3",
        "-19/12*rx3*ry2^2",
        "-3/4*rx2*ry4",
        "-3/4*rx4*ry2",
        "-17/12*rx2*rx3*ry2",
        "-17/12*rx2*ry2*ry3",
        "-1/6*rx2^3*ry2",
        "-1/6*rx2*ry2^3",
    ],
    8: [
        "7/30*rx2*ry3",
        "7/30*rx3*ry2",
        "43/180*rx2*ry2^2",
        "43/180*rx2^2*ry2",
        "-4/3*rx2*ry5",
        "-4/3*rx5*ry2",
        "-4/3*rx2*ry2^2*ry3",
        "-4/3*rx2^2*rx3*ry2",
        "-4/3*rx2*ry3^2",
        "-4/3*rx3^2*ry2",
        "-32/3*rx2^2*ry2*ry3",
        "-32/3*rx2*rx3*ry2^2",
        "-8/3*rx3*ry2^3",
        "-8/3*rx2^3*ry3",
        "-9/2*rx2^2*ry4",
        "-9/2*rx4*ry2^2",
        "-20/3*rx3*ry2*ry3",
        "-20/3*rx2*rx3*ry3",
        "-2*rx2^2*ry2^3",
        "-2*rx2^3*ry2^2",
        "-3*rx2*ry2*ry4",
        "-3*rx2*rx4*ry2",
        "-2*rx3*ry4",
        "-2*rx4*ry3",
    ],
}
