"""Built-in instances: the worked example and the four obstruction instances.

Each :class:`Instance` bundles named type spaces, outcome functions and the
IC sets stated for them, so that scripts, tests and the CLI share one copy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Tuple

from .mechanism import ICSet, OutcomeFunction, TypeSpace


@dataclass(frozen=True)
class Instance:
    name: str
    spaces: Dict[str, TypeSpace]
    outcomes: Dict[str, OutcomeFunction]
    expected_ic: Dict[str, ICSet] = field(default_factory=dict)


def _space(label, rows):
    return TypeSpace(rows, label)


# Worked example: two players, three types each, three outcomes.
ARRANGEMENT = Instance(
    name="example",
    spaces={
        "T1": _space("T1", [[0, 2, 3], [0, 4, 2], [0, 3, 7]]),
        "T2": _space("T2", [[0, 5, -5], [0, -2, 9], [0, 1, 3]]),
        # hand-built second-player space on which g becomes an affine maximizer
        "S2": _space("S2", [[0, 5, "4.3"], [0, -2, "0.5"], [0, 1, 3]]),
    },
    outcomes={"g": OutcomeFunction.nested([[2, 1, 1], [2, 1, 2], [3, 3, 3]], 3)},
)

# Three players, two types each, six outcomes. As printed, the fiber lists
# pair tensor axis 2 with the third matrix and axis 3 with the second, so
# ``spaces_in_axis_order`` gives them in the order the IC check needs.
THREE_PLAYER = Instance(
    name="three_player",
    spaces={
        "T1": _space("T1", [[3, 4, 5, 6, 2, 1], [0] * 6]),
        "T2": _space("T2", [[5, 2, 3, 6, 4, 1], [0] * 6]),
        "T3": _space("T3", [[5, 2, 6, 3, 4, 1], [0] * 6]),
    },
    outcomes={"g": OutcomeFunction.nested([[[1, 3], [4, 1]], [[5, 2], [2, 6]]], 6)},
)
THREE_PLAYER_AXIS_ORDER = ("T1", "T3", "T2")
THREE_PLAYER_FIBERS = {
    "T1": ((1, 5), (3, 2), (4, 2), (1, 6)),
    "T2": ((1, 3), (4, 1), (5, 2), (2, 6)),
    "T3": ((1, 4), (3, 1), (5, 2), (2, 6)),
}

# Two players where both IC sets are to be preserved.
BOTH_SIDES = Instance(
    name="both_sides",
    spaces={
        "T1": _space("T1", [[13, 46, 9, 11], [45, 47, 1, 24]]),
        "T2": _space("T2", [[12, 8, 19, 38], [28, 46, 19, 4]]),
    },
    outcomes={"g": OutcomeFunction.nested([[4, 3], [1, 2]], 4)},
    expected_ic={
        "T1": ((1, 1), (2, 1), (2, 2), (2, 4), (3, 1), (3, 2), (3, 3), (3, 4), (4, 1), (4, 4)),
        "T2": ((1, 1), (1, 2), (2, 2), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3), (4, 4)),
    },
)

# Two outcome functions that must share one perturbed space.
SHARED_PAIR = Instance(
    name="shared_pair",
    spaces={
        "T1": _space("T1", [[0, 1, 3], [0, 2, 1]]),
        "T2": _space("T2", [[0, 4, 2], [0, 2, 0]]),
    },
    outcomes={
        "g1": OutcomeFunction.nested([[2, 3], [2, 1]], 3),
        "g2": OutcomeFunction.nested([[3, 1], [3, 2]], 3),
    },
    expected_ic={
        "T1": ((1, 1), (1, 2), (2, 2), (3, 1), (3, 2), (3, 3)),
        "T2": ((1, 1), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)),
    },
)

# Symmetric outcome function on two copies of one type space.
SYMMETRIC = Instance(
    name="symmetric",
    spaces={"T1": _space("T1", [[0, 5, 6], [0, 0, 3], [0, 4, 0]])},
    outcomes={"g": OutcomeFunction.nested([[2, 3, 2], [3, 3, 1], [2, 1, 1]], 3)},
    expected_ic={
        "T1": ((1, 1, 1), (2, 1, 1), (2, 1, 2), (2, 2, 2), (2, 3, 2),
               (3, 1, 1), (3, 1, 2), (3, 3, 1), (3, 3, 2), (3, 3, 3)),
    },
)
SYMMETRIC_CELL = (3, 1, 2)

ALL: Tuple[Instance, ...] = (ARRANGEMENT, THREE_PLAYER, BOTH_SIDES, SHARED_PAIR, SYMMETRIC)
