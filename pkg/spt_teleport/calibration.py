"""
Finding the uncorrupted path.

calibrate_path teleports known states (|0⟩ and |+⟩ by default) along every
named path, using each path's own byproduct, and keeps the path with the
highest mean fidelity.  Ties within 1e-12 go to the lexicographically
first path id; when no path clears 2/3 the graph is reported unprotected.

majority_vote_teleport works from a single shot on the three-row
hourglass.  One joint outcome record is sampled, the raw output is read
once in the frame of the logical Z, and every row decodes that bit with
its own byproduct.  With at most one corrupted row two rows agree, the
majority is the teleported bit and the dissenting row is the corrupted
one.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .defs import QUANTUM_THRESHOLD, InputState, pauli_2x2
from .errors import ProtocolError
from .graphs import GraphSpec
from .noise import ErrorSpec
from .sim import MeasurementRecord, make_rng
from .teleport import (
    OutputFixup,
    byproduct_for_path,
    fidelity_exact,
    fixup_correction,
    run_teleport,
    teleport_branches,
)

logger = logging.getLogger(__name__)

DEFAULT_SHOTS = 200
TIE_TOL = 1e-12


@dataclass(frozen=True)
class CalibrationResult:
    """Per-path fidelity per known state, the per-path mean, and the choice."""
    fidelities: dict[str, tuple[float, ...]]
    known_states: tuple[InputState, ...]
    chosen: str | None
    shots: int | None

    @property
    def means(self) -> dict[str, float]:
        return {p: float(np.mean(f)) for p, f in self.fidelities.items()}

    @property
    def status(self) -> str:
        return "protected" if self.chosen is not None else "unprotected"


def calibrate_path(g: GraphSpec, errors: Sequence[ErrorSpec],
                   known_states: Sequence[InputState] = (InputState.zero(), InputState.plus()),
                   shots: int | None = DEFAULT_SHOTS, seed: int | None = None,
                   paths: Sequence[str] | None = None) -> CalibrationResult:
    """Teleport each known state along each path; `shots=None` uses exact fidelities."""
    paths = sorted(paths if paths is not None else g.paths)
    if len(paths) < 2:
        raise ProtocolError(f"calibration needs at least two paths, {g.name} names {len(paths)}")
    table: dict[str, tuple[float, ...]] = {}
    cell = 0
    for pid in paths:
        fids = []
        for state in known_states:
            if shots is None:
                fids.append(fidelity_exact(g, errors, state, pid))
            else:
                fids.append(run_teleport(g, errors, state, pid, shots, seed, cell).fidelity)
            cell += 1
        table[pid] = tuple(fids)

    means = {p: float(np.mean(f)) for p, f in table.items()}
    best = max(means.values())
    chosen = next(p for p in paths if means[p] >= best - TIE_TOL)
    if best <= QUANTUM_THRESHOLD:
        logger.info("%s: no path clears the quantum threshold (best %.4f)", g.name, best)
        chosen = None
    return CalibrationResult(table, tuple(known_states), chosen, shots)


@dataclass(frozen=True)
class MajorityVote:
    """Row bits decoded from one shot.

    `expected` is the input's own Z bit when the input is a Z eigenstate.
    """
    bits: dict[str, int]
    decision: int
    dissenting: str | None
    record: MeasurementRecord
    expected: int | None = None
    raw: int = field(default=0)

    @property
    def unanimous(self) -> bool:
        return self.dissenting is None

    @property
    def correct(self) -> bool | None:
        return None if self.expected is None else self.decision == self.expected


def _z_bit(state: InputState) -> int | None:
    if abs(state.polar) < 1e-12:
        return 0
    if abs(state.polar - np.pi) < 1e-12:
        return 1
    return None


def majority_vote_teleport(g3: GraphSpec, errors: Sequence[ErrorSpec], input_state: InputState,
                           seed: int | None, cell: int = 0) -> MajorityVote:
    row_ids = ("row0", "row1", "row2")
    if not all(r in g3.paths for r in row_ids):
        raise ProtocolError(f"majority vote needs the three-row hourglass, got {g3.name}")
    byps = [byproduct_for_path(g3, r) for r in row_ids]
    fixups = {b.fixup for b in byps}
    if len(fixups) != 1:
        raise ProtocolError("rows disagree on the output frame")
    (fixup,) = fixups
    frame = pauli_2x2("Z" if fixup is OutputFixup.IDENTITY else "X")

    rng = make_rng(seed, cell)
    table = teleport_branches(g3, errors, input_state)
    probs = np.clip(table.probabilities, 0.0, None)
    b = int(rng.choice(len(probs), p=probs / probs.sum()))
    out = table.normalized_output(b)
    if table.mixed:
        p_plus = float(np.trace(out @ (np.eye(2) + frame)).real / 2)
    else:
        p_plus = float(np.vdot(out, (np.eye(2) + frame) @ out).real / 2)
    raw = 0 if rng.random() < p_plus else 1

    record = table.record(b)
    bits = {}
    for rid, byp in zip(row_ids, byps):
        z, x = byp.exponents(record.outcomes)
        c = fixup_correction(byp.fixup, z, x)
        # logical Z read in the raw frame: C† Z C = ±frame
        sign = np.trace(c.conj().T @ pauli_2x2("Z") @ c @ frame).real / 2
        bits[rid] = raw ^ int(sign < 0)

    ones = sum(bits.values())
    decision = int(ones >= 2)
    dissenting = next((r for r in row_ids if bits[r] != decision), None)
    if dissenting is not None:
        logger.info("majority vote: row %s dissents", dissenting)
    return MajorityVote(bits, decision, dissenting, record, _z_bit(input_state), raw)
