"""Loop-by-loop spread of information from an initially informed set.

Two contact models are provided because they bracket two plausible
readings of per-loop dynamics:

* ``broadcast``: every informed vertex attempts transmission to every
  neighbor that was uninformed at the start of the loop; each attempt
  succeeds independently with the edge's probability. On a complete
  weight-1.0 graph this saturates in a single loop.
* ``random-contact``: every informed vertex with at least one edge picks
  one of the other n - 1 vertices uniformly at random; the attempt
  succeeds with the probability stored on the connecting edge (absent
  pairs have probability 0, so "no edge" and "edge with p = 0" behave
  identically). Isolated (degree-0) informed vertices skip their turn
  and consume no randomness.

Updates are synchronous: vertices informed during a loop start
transmitting at the next loop. Success is re-sampled on every attempt.

Randomness comes from a single PCG64 stream seeded with the run seed.
Consumption order is pinned so trajectories are reproducible anywhere:

1. the initial informed set is drawn first (uniform subset without
   replacement), unless explicit initial vertices are configured;
2. broadcast draws one uniform per (source, target) attempt, sources in
   ascending vertex order, targets in ascending order within a source;
3. random-contact draws one uniform per acting vertex (ascending) for
   target selection, then one uniform per acting vertex (ascending) for
   the success check.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .generators import make_rng
from .graph import Graph

__all__ = [
    "ContactModel",
    "SimulationConfig",
    "DiffusionState",
    "TrajectoryRecord",
    "init_state",
    "step",
    "run",
]


class ContactModel(enum.Enum):
    BROADCAST = "broadcast"
    RANDOM_CONTACT = "random-contact"


@dataclass(frozen=True)
class SimulationConfig:
    """Parameters of a single diffusion run.

    ``initial_vertices`` optionally pins the starting set instead of
    drawing it uniformly; when given, its length must match
    ``initial_informed``.
    """

    model: ContactModel
    initial_informed: int
    max_loops: int
    seed: int
    initial_vertices: tuple[int, ...] | None = None

    def __post_init__(self):
        if isinstance(self.model, str):
            object.__setattr__(self, "model", ContactModel(self.model))
        if self.initial_informed < 1:
            raise ValueError(
                f"initial_informed must be >= 1, got {self.initial_informed}")
        if self.max_loops < 1:
            raise ValueError(f"max_loops must be >= 1, got {self.max_loops}")
        if self.initial_vertices is not None:
            verts = tuple(int(v) for v in self.initial_vertices)
            if len(set(verts)) != len(verts):
                raise ValueError("initial_vertices contains duplicates")
            if len(verts) != self.initial_informed:
                raise ValueError(
                    f"initial_vertices has {len(verts)} entries but "
                    f"initial_informed is {self.initial_informed}")
            object.__setattr__(self, "initial_vertices", verts)


@dataclass(frozen=True)
class DiffusionState:
    """Informed-vertex set and current loop index."""

    informed: frozenset[int]
    loop: int
    _mask: np.ndarray | None = field(
        default=None, compare=False, repr=False)

    def mask(self, n: int) -> np.ndarray:
        """Boolean membership array of length n (cached when possible)."""
        if self._mask is not None and self._mask.size == n:
            return self._mask
        m = np.zeros(n, dtype=bool)
        if self.informed:
            m[list(self.informed)] = True
        return m


def init_state(g: Graph, cfg: SimulationConfig,
               rng: np.random.Generator | None = None) -> DiffusionState:
    """Draw the initial informed set and return the loop-0 state.

    When ``rng`` is omitted a fresh stream is created from ``cfg.seed``;
    :func:`run` passes its own stream so that the initial draw and the
    subsequent per-loop draws share one seed.
    """
    if not 1 <= cfg.initial_informed <= g.n:
        raise ValueError(
            f"initial_informed must be in [1, {g.n}], got {cfg.initial_informed}")
    if cfg.initial_vertices is not None:
        verts = cfg.initial_vertices
        if any(not 0 <= v < g.n for v in verts):
            raise ValueError("initial vertex id outside [0, n)")
        chosen = np.array(sorted(verts), dtype=np.int64)
    else:
        if rng is None:
            rng = make_rng(cfg.seed)
        chosen = rng.choice(g.n, size=cfg.initial_informed, replace=False)
    mask = np.zeros(g.n, dtype=bool)
    mask[chosen] = True
    return DiffusionState(frozenset(int(v) for v in chosen), 0, mask)


def _step_broadcast(g: Graph, mask: np.ndarray,
                    rng: np.random.Generator) -> np.ndarray:
    indptr, nbr, nbrw = g._adj()
    new_mask = mask.copy()
    for i in np.nonzero(mask)[0].tolist():
        lo, hi = indptr[i], indptr[i + 1]
        nbrs = nbr[lo:hi]
        open_targets = ~mask[nbrs]
        m = int(np.count_nonzero(open_targets))
        if m == 0:
            continue
        coins = rng.random(m)
        hit = coins < nbrw[lo:hi][open_targets]
        new_mask[nbrs[open_targets][hit]] = True
    return new_mask


def _step_random_contact(g: Graph, mask: np.ndarray,
                         rng: np.random.Generator) -> np.ndarray:
    new_mask = mask.copy()
    if g.n < 2:
        return new_mask
    informed = np.nonzero(mask)[0]
    act = informed[g.degrees()[informed] > 0]
    if act.size == 0:
        return new_mask
    picks = rng.random(act.size)
    targets = (picks * (g.n - 1)).astype(np.int64)
    targets += targets >= act
    coins = rng.random(act.size)
    weights = g.pair_weights(act, targets)
    hit = coins < weights
    new_mask[targets[hit]] = True
    return new_mask


def step(g: Graph, state: DiffusionState, model: ContactModel,
         rng: np.random.Generator) -> DiffusionState:
    """Advance one loop; the informed set can only grow."""
    mask = state.mask(g.n)
    if isinstance(model, str):
        model = ContactModel(model)
    if model is ContactModel.BROADCAST:
        new_mask = _step_broadcast(g, mask, rng)
    else:
        new_mask = _step_random_contact(g, mask, rng)
    informed = frozenset(np.nonzero(new_mask)[0].tolist())
    return DiffusionState(informed, state.loop + 1, new_mask)


@dataclass
class TrajectoryRecord:
    """Informed counts per loop for one run, counts[0] at loop 0."""

    n: int
    counts: list[int]

    @property
    def loops(self) -> int:
        return len(self.counts) - 1

    def saturation_loop(self) -> int | None:
        """First loop at which all n vertices are informed, else None."""
        for loop, c in enumerate(self.counts):
            if c == self.n:
                return loop
        return None

    def first_loop_reaching(self, count: int) -> int | None:
        """First loop with at least ``count`` informed, else None."""
        for loop, c in enumerate(self.counts):
            if c >= count:
                return loop
        return None

    def to_csv(self) -> str:
        lines = ["loop,informed_count"]
        lines.extend(f"{loop},{c}" for loop, c in enumerate(self.counts))
        return "\n".join(lines) + "\n"


def run(g: Graph, cfg: SimulationConfig) -> TrajectoryRecord:
    """Apply :func:`step` until saturation or the loop budget runs out."""
    rng = make_rng(cfg.seed)
    state = init_state(g, cfg, rng)
    counts = [len(state.informed)]
    while counts[-1] < g.n and state.loop < cfg.max_loops:
        state = step(g, state, cfg.model, rng)
        counts.append(len(state.informed))
    return TrajectoryRecord(g.n, counts)
