"""Bundled sonnet corpus and its reference results table.

The 154 sonnets are stored one file per poem, one verse line per text line.
``reference_table()`` holds the reference statistics per sonnet (n, R_n,
theta_hat, q_hat, omega2, p_value).

The reference counts are reproduced for 93 sonnets when the second verse
line of each poem is left out, intra-word hyphens are kept and theta_hat uses
the interpolated half-length count. ``reference_input`` and
``REFERENCE_CONFIG`` encode that reading; the remaining 61 rows differ by a
few tokens and cannot be matched from the text alone.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources

from .pipeline import AnalysisConfig

__all__ = [
    "SONNET_COUNT",
    "REFERENCE_CONFIG",
    "ReferenceRow",
    "load_sonnet",
    "load_sonnets",
    "reference_input",
    "reference_table",
]

SONNET_COUNT = 154

REFERENCE_CONFIG = AnalysisConfig(keep_hyphens=True, half_index="interpolated",
                                  null_law="unnormalized")


@dataclass(frozen=True)
class ReferenceRow:
    number: int
    label: str
    n: int
    R_n: int
    theta_hat: float
    q_hat: float
    omega2: float
    p_value: float


def _data():
    return resources.files("zmgof") / "data"


def load_sonnet(number: int) -> str:
    if not 1 <= number <= SONNET_COUNT:
        raise ValueError(f"sonnet number must be in 1..{SONNET_COUNT}")
    return (_data() / "sonnets" / f"sonnet_{number:03d}.txt").read_text(encoding="utf-8")


def load_sonnets() -> dict:
    """{number: text} for all bundled sonnets."""
    return {k: load_sonnet(k) for k in range(1, SONNET_COUNT + 1)}


def reference_input(number: int) -> str:
    """The sonnet as it was fed to the reference analysis (second line left out)."""
    lines = load_sonnet(number).splitlines()
    return "\n".join(lines[:1] + lines[2:]) + "\n"


def reference_table() -> list:
    """Reference rows in sonnet order."""
    with (_data() / "shakespeare_table.tsv").open(encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh, delimiter="\t"))
    return [ReferenceRow(int(r["number"]), r["label"], int(r["n"]), int(r["R_n"]),
                         float(r["theta_hat"]), float(r["q_hat"]), float(r["omega2"]),
                         float(r["p_value"]))
            for r in rows]
