"""Shared fixtures: the resource graphs most tests run on."""

import math

import pytest

from spt_teleport.defs import InputState
from spt_teleport.graphs import build_chain, build_diamond, build_hourglass
from spt_teleport.pauli import PauliString


@pytest.fixture
def diamond():
    return build_diamond()


@pytest.fixture
def chain6():
    return build_chain(6)


@pytest.fixture
def hourglass2():
    """n = 2, two rows: I=1, m=2, (1,0)=3, (1,1)=4, (2,0)=5, (2,1)=6, O=7."""
    return build_hourglass(2)


@pytest.fixture
def hourglass3():
    """n = 2, three rows: the majority-vote resource."""
    return build_hourglass(2, rows=3)


@pytest.fixture
def diamond_strings():
    """The four diamond path strings, qubit 0 first."""
    return {
        "s135": PauliString.from_label("+XIXIXZ"),
        "s246": PauliString.from_label("+ZXIXIX"),
        "s145": PauliString.from_label("+XIIXXZ"),
        "s236": PauliString.from_label("+ZXXIIX"),
    }


@pytest.fixture
def generic_input():
    """An input off every Pauli axis."""
    return InputState(1.2, 0.4)


@pytest.fixture
def cardinal_inputs():
    return [InputState.zero(), InputState.one(), InputState.plus(), InputState.minus(),
            InputState.in_plane(math.pi / 2)]
