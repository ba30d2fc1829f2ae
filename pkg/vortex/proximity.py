# vortex/proximity.py
"""
Descriptive proximity.

A probe maps a complex to a fixed-length feature vector. Two collections are
descriptively near when some member of their union carries a description
found in both. Exact probes compare descriptions for equality, the others
within their tolerance.
"""
from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np
from django.conf import settings

from .cell_complex import CellComplex, closure, get_tolerance
from .cycles import complex_cycles
from .exceptions import ProbeError, VortexError
from .nerves import VortexNerve
from .reports import AxiomReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FeatureVector:
    components: Tuple[float, ...]

    def __post_init__(self) -> None:
        try:
            comps = tuple(float(c) for c in self.components)
        except (TypeError, ValueError) as exc:
            raise ProbeError(f"feature components must be numbers: {exc}") from exc
        object.__setattr__(self, "components", comps)

    @property
    def arity(self) -> int:
        return len(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def matches(self, other: "FeatureVector", tol: float = 0.0) -> bool:
        if self.arity != other.arity:
            return False
        return all(abs(a - b) <= tol for a, b in zip(self.components, other.components))

    def as_list(self, exact: bool = False) -> List[float]:
        if exact:
            return [int(c) if float(c).is_integer() else c for c in self.components]
        return list(self.components)


@dataclass(frozen=True)
class Probe:
    name: str
    arity: int
    evaluator: Callable[[Any], Sequence[float]] = field(compare=False)
    exact: bool = False
    eps: Optional[float] = None

    @property
    def tolerance(self) -> float:
        if self.exact:
            return 0.0
        return get_tolerance(self.eps)

    def describe(self, x: Any) -> FeatureVector:
        vector = FeatureVector(tuple(self.evaluator(x)))
        if vector.arity != self.arity:
            raise ProbeError(f"probe {self.name} returned {vector.arity} components, expected {self.arity}")
        return vector

    def with_eps(self, eps: Optional[float]) -> "Probe":
        return self if eps is None else dataclasses.replace(self, eps=float(eps))

    def memoized(self) -> "Probe":
        """Same probe, evaluated at most once per member."""
        cache: Dict[Hashable, Sequence[float]] = {}
        raw = self.evaluator

        def evaluate(x: Any) -> Sequence[float]:
            if x not in cache:
                cache[x] = tuple(raw(x))
            return cache[x]

        return dataclasses.replace(self, evaluator=evaluate)


# ------------------------
# Built-in probes
# ------------------------
def _as_complex(x: Any) -> CellComplex:
    if isinstance(x, VortexNerve):
        return x.to_complex()
    if isinstance(x, CellComplex):
        return closure(x)
    raise ProbeError(f"cannot describe a {type(x).__name__}")


def _hole_count(x: Any) -> Tuple[int]:
    return (len(complex_cycles(_as_complex(x))[1]),)


def _cycle_count(x: Any) -> Tuple[int]:
    return (len(complex_cycles(_as_complex(x))[0]),)


def _cell_count(x: Any) -> Tuple[int]:
    return (len(_as_complex(x)),)


def _area(x: Any) -> Tuple[float]:
    E = _as_complex(x)
    holes = complex_cycles(E)[1]
    return (E.filled_region.area - sum(h.polygon.area for h in holes),)


def _centroid(x: Any) -> Tuple[float, float]:
    E = _as_complex(x)
    if E.is_empty:
        raise ProbeError("the empty complex has no centroid")
    c = E.geometry().centroid
    return (c.x, c.y)


_REGISTRY: Dict[str, Probe] = {}


def register_probe(probe: Probe) -> Probe:
    _REGISTRY[probe.name] = probe
    return probe


def get_probe(name: str) -> Probe:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise ProbeError(f"unknown probe '{name}' (known: {', '.join(sorted(_REGISTRY))})") from None


def builtin_probes() -> List[Probe]:
    return [_REGISTRY[name] for name in sorted(_REGISTRY)]


register_probe(Probe("hole-count", 1, _hole_count, exact=True))
register_probe(Probe("cycle-count", 1, _cycle_count, exact=True))
register_probe(Probe("cell-count", 1, _cell_count, exact=True))
register_probe(Probe("area", 1, _area))
register_probe(Probe("centroid", 2, _centroid))


# ------------------------
# Descriptive intersection
# ------------------------
def _as_collection(A: Any) -> Tuple[Any, ...]:
    if A is None:
        return ()
    if isinstance(A, (CellComplex, VortexNerve)):
        return (A,)
    return tuple(A)


def descriptive_intersection(A: Any, B: Any, probe: Probe) -> frozenset:
    """Members x of A ∪ B whose description lies in Φ(A) and in Φ(B)."""
    A, B = _as_collection(A), _as_collection(B)
    if not A or not B:
        return frozenset()
    union = list(dict.fromkeys(A + B))
    described = {x: probe.describe(x) for x in union}
    da = [described[x] for x in A]
    db = [described[x] for x in B]

    if probe.exact:
        in_a = {d.components for d in da}
        in_b = {d.components for d in db}
        return frozenset(x for x in union if described[x].components in in_a and described[x].components in in_b)

    tol = probe.tolerance
    U = np.array([described[x].components for x in union], dtype=float)
    DA = np.array([d.components for d in da], dtype=float)
    DB = np.array([d.components for d in db], dtype=float)
    near_a = (np.abs(U[:, None, :] - DA[None, :, :]) <= tol).all(axis=2).any(axis=1)
    near_b = (np.abs(U[:, None, :] - DB[None, :, :]) <= tol).all(axis=2).any(axis=1)
    return frozenset(x for x, keep in zip(union, near_a & near_b) if keep)


def dnear(A: Any, B: Any, probe: Probe) -> bool:
    return bool(descriptive_intersection(A, B, probe))


@dataclass(frozen=True)
class DescriptiveProximitySpace:
    universe: Tuple[Any, ...]
    probe: Probe

    def __post_init__(self) -> None:
        object.__setattr__(self, "universe", tuple(self.universe))
        if not self.universe:
            raise VortexError("a descriptive proximity space needs a nonempty universe")

    def near(self, A: Any, B: Any) -> bool:
        return dnear(A, B, self.probe)


# ------------------------
# Axiom sweep
# ------------------------
def _sample(rng: np.random.Generator, n: int, largest: int = 4) -> Tuple[int, ...]:
    size = int(rng.integers(0, min(n, largest) + 1))
    return tuple(sorted(int(i) for i in rng.choice(n, size=size, replace=False)))


def check_axioms(space: DescriptiveProximitySpace, trials: Optional[int] = None, seed: Optional[int] = None) -> AxiomReport:
    """
    Seeded sweep of the descriptive proximity axioms over random sub-collections
    of the universe. A probe that describes the same member differently on two
    evaluations breaks symmetry and is reported before the sweep starts.
    """
    trials = int(trials if trials is not None else getattr(settings, "VORTEX_AXIOM_TRIALS", 1000))
    seed = int(seed if seed is not None else getattr(settings, "VORTEX_NERVE_SEED", 0))
    universe = space.universe
    report = AxiomReport(
        title="descriptive proximity axioms",
        probe=space.probe.name,
        seed=seed,
        trials=trials,
    )

    for i, x in enumerate(universe):
        first, second = space.probe.describe(x), space.probe.describe(x)
        report.tally(
            "dP1",
            first.components == second.components,
            f"member {i} described as {first.as_list()} then {second.as_list()}",
        )

    probe = space.probe.memoized()
    rng = np.random.default_rng(seed)
    n = len(universe)
    for t in range(trials):
        ia, ib, ic = _sample(rng, n), _sample(rng, n), _sample(rng, n)
        A = [universe[i] for i in ia]
        B = [universe[i] for i in ib]
        C = [universe[i] for i in ic]
        witness = f"trial {t}: A={list(ia)} B={list(ib)} C={list(ic)}"

        report.tally("dP0", not dnear([], A, probe) and not dnear(A, [], probe), witness)
        ab, ba = dnear(A, B, probe), dnear(B, A, probe)
        report.tally("dP1", ab == ba, witness)
        meet = descriptive_intersection(A, B, probe)
        if meet:
            report.tally("dP2", ab, witness)
        if ab:
            report.tally("near-implies-meet", bool(meet), witness)
        bc = list(dict.fromkeys(B + C))
        report.tally("dP3", dnear(A, bc, probe) == (ab or dnear(A, C, probe)), witness)

    logger.info(
        "axiom sweep for %s: %d trials, %d counterexamples", space.probe.name, trials, len(report.failures)
    )
    return report
