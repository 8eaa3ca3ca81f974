"""Instance schema, JSON serialization and generators.

Instances are written with every integer as a decimal string: the sharpness
family overflows 64-bit machine words quickly and JSON numbers are lossy.
Index sets in files are 1-based; everything in memory is 0-based.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .corner import corner_vertices
from .errors import GenerationFailed
from .exact import IntMatrix, det, rank
from .lattice import ProjectionContext

SAIL_ASSERT_MAX_S = 9  # full corner-vertex assertion cap for the sharpness family


@dataclass(frozen=True)
class InstanceFile:
    """One CLI unit of work: a system plus optional basis/support/costs."""

    kind: str  # "general" | "knapsack"
    A: IntMatrix
    b: tuple
    gamma: tuple | None = None  # 0-based
    tau: tuple | None = None  # 0-based
    c: tuple | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.kind not in ("general", "knapsack"):
            raise ValueError(f"bad kind {self.kind!r}")
        A = self.A if isinstance(self.A, IntMatrix) else IntMatrix(self.A)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", tuple(int(v) for v in self.b))
        if len(self.b) != A.m:
            raise ValueError("b has wrong length")
        if A.m >= A.n:
            raise ValueError("m < n required")
        if self.kind == "knapsack":
            if A.m != 1:
                raise ValueError("knapsack instances have one row")
            if any(x <= 0 for x in A.rows[0]):
                raise ValueError("knapsack entries must be positive")
            if math.gcd(*A.rows[0]) != 1:
                raise ValueError("knapsack gcd must be 1")
            if self.b[0] < 0:
                raise ValueError("knapsack b must be nonnegative")
        for name in ("gamma", "tau"):
            idx = getattr(self, name)
            if idx is not None:
                idx = tuple(sorted(int(i) for i in idx))
                object.__setattr__(self, name, idx)
                if any(i < 0 or i >= A.n for i in idx) or len(set(idx)) != len(idx):
                    raise ValueError(f"bad {name} index set")
        if self.gamma is not None:
            if len(self.gamma) != A.m or det(A.cols(self.gamma)) == 0:
                raise ValueError("gamma must index a nonsingular basis")
        if self.c is not None:
            c = tuple(int(v) for v in self.c)
            object.__setattr__(self, "c", c)
            if len(c) != A.n:
                raise ValueError("c has wrong length")
        if rank(A) < A.m:
            raise ValueError("A must have full row rank")

    @property
    def a(self):
        if self.kind != "knapsack":
            raise ValueError("not a knapsack instance")
        return self.A.rows[0]

    def context(self) -> ProjectionContext:
        gamma = self.gamma
        if gamma is None:
            if self.kind == "knapsack":
                gamma = (0,)
            else:
                raise ValueError("instance has no recorded basis")
        return ProjectionContext(self.A, self.b, gamma)

    def to_json(self) -> str:
        doc = {"kind": self.kind}
        if self.kind == "knapsack":
            doc["a"] = [str(x) for x in self.A.rows[0]]
            doc["b"] = str(self.b[0])
        else:
            doc["A"] = [[str(x) for x in row] for row in self.A.rows]
            doc["b"] = [str(x) for x in self.b]
        if self.gamma is not None:
            doc["gamma"] = [i + 1 for i in self.gamma]
        if self.tau is not None:
            doc["tau"] = [i + 1 for i in self.tau]
        if self.c is not None:
            doc["c"] = [str(x) for x in self.c]
        doc["meta"] = {k: str(v) if isinstance(v, (int, Fraction)) else v for k, v in self.meta.items()}
        return json.dumps(doc, indent=2)

    @staticmethod
    def from_json(text: str) -> "InstanceFile":
        doc = json.loads(text)
        kind = doc["kind"]
        if kind == "knapsack":
            A = IntMatrix([[int(x) for x in doc["a"]]])
            b = (int(doc["b"]),)
        else:
            A = IntMatrix([[int(x) for x in row] for row in doc["A"]])
            b = tuple(int(x) for x in doc["b"])
        gamma = tuple(i - 1 for i in doc["gamma"]) if "gamma" in doc else None
        tau = tuple(i - 1 for i in doc["tau"]) if "tau" in doc else None
        c = tuple(int(x) for x in doc["c"]) if "c" in doc else None
        return InstanceFile(kind=kind, A=A, b=b, gamma=gamma, tau=tau, c=c, meta=doc.get("meta", {}))


def save_instance(inst: InstanceFile, path):
    with open(path, "w") as fh:
        fh.write(inst.to_json())
        fh.write("\n")


def load_instance(path) -> InstanceFile:
    with open(path) as fh:
        return InstanceFile.from_json(fh.read())


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------


def sharpness_vector(s, t):
    """(2^(s-1), 2^(s-2) + t 2^(s-1), ..., 1 + t 2^(s-1)) and its all-ones b."""
    a = [2 ** (s - 1)] + [2 ** (s - 1 - i) + t * 2 ** (s - 1) for i in range(1, s)]
    return tuple(a), sum(a)


def gen_sharpness(s, t=0) -> InstanceFile:
    """Sharpness family member: the all-ones point is a corner vertex.

    For small s the vertex claim is asserted by the full sail computation;
    beyond that only the cheap necessary conditions (membership and the
    supporting congruence hyperplane) are asserted. The exact proximity
    ratio delta * 2^(s-1) / ((s-1) ||a||_inf) is recorded in meta.
    """
    if s < 3:
        raise ValueError("s >= 3 required")
    if s > 30:
        raise ValueError("s <= 30 (entries get astronomically large beyond)")
    if t < 0:
        raise ValueError("t >= 0 required")
    a, b = sharpness_vector(s, t)
    ones = (1,) * s
    assert sum(x * z for x, z in zip(a, ones)) == b
    ctx = ProjectionContext(IntMatrix([list(a)]), (b,), (0,))
    if s <= SAIL_ASSERT_MAX_S:
        cv = corner_vertices(ctx)
        if ones not in cv.lifted:
            raise AssertionError("all-ones point is not a corner vertex; bug signal")
    else:
        # Supporting hyperplane: weights of the t-free family tail.
        base = [2 ** (s - 1 - i) for i in range(1, s)]
        if sum(base) != 2 ** (s - 1) - 1:
            raise AssertionError("hyperplane constant mismatch")
    delta = Fraction(b, a[0]) - 1 if Fraction(b, a[0]) - 1 >= 1 else Fraction(1)
    ratio = delta * 2 ** (s - 1) / ((s - 1) * max(a))
    return InstanceFile(
        kind="knapsack",
        A=IntMatrix([list(a)]),
        b=(b,),
        gamma=(0,),
        meta={
            "family": "sharpness",
            "params": {"s": str(s), "t": str(t)},
            "delta": str(delta),
            "ratio": str(ratio),
        },
    )


def gen_r1_family(k, n=2) -> InstanceFile:
    """(k, ..., k, 1) with right side k-1: a single feasible integer point."""
    if k < 2 or n < 2:
        raise ValueError("k >= 2 and n >= 2 required")
    a = (k,) * (n - 1) + (1,)
    return InstanceFile(
        kind="knapsack",
        A=IntMatrix([list(a)]),
        b=(k - 1,),
        gamma=(0,),
        meta={"family": "r1", "params": {"k": str(k), "n": str(n)}},
    )


def gen_paper_2x4() -> InstanceFile:
    """The 2x4 system whose corner polyhedron has one vertex at distance 10."""
    return InstanceFile(
        kind="general",
        A=IntMatrix([[2, 0, 5, 5], [0, 4, 2, -1]]),
        b=(20, 3),
        gamma=(0, 1),
        meta={"family": "paper2x4", "params": {}},
    )


def gen_random(m, n, entry_bound, seed, kind="general", degenerate=False) -> InstanceFile:
    """Deterministic random instance with a nonempty integer solution set.

    The right side is A w for a random nonnegative integer w, so the
    knapsack kind is representable and the general kind always has integer
    solutions. The recorded gamma is the lexicographically first
    nonsingular basis. degenerate=True engineers a vertex support tau
    smaller than m and records it.
    """
    if m >= n:
        raise ValueError("m < n required")
    rng = random.Random(seed)
    for _ in range(500):
        if kind == "knapsack":
            if m != 1:
                raise ValueError("knapsack kind needs m = 1")
            a = [rng.randint(1, entry_bound) for _ in range(n)]
            if math.gcd(*a) != 1:
                continue
            A = IntMatrix([a])
        else:
            A = IntMatrix([[rng.randint(-entry_bound, entry_bound) for _ in range(n)] for _ in range(m)])
            if rank(A) < m:
                continue
        gamma = _first_basis(A)
        if gamma is None:
            continue
        tau = None
        if degenerate:
            size = rng.randint(0, m - 1) if m > 1 else 0
            if size == 0 and m == 1:
                continue
            support = sorted(rng.sample(range(n), size)) if size else []
            w = [0] * n
            for j in support:
                w[j] = rng.randint(1, 4)
            b = A.mat_vec(w)
            tau = tuple(support)
            # tau must be extendable (columns independent); size < m keeps it easy
            if tau and rank(A.cols(tau)) < len(tau):
                continue
        else:
            w = [rng.randint(0, 4) for _ in range(n)]
            b = A.mat_vec(w)
        c = tuple(rng.randint(-entry_bound, entry_bound) for _ in range(n))
        return InstanceFile(
            kind=kind,
            A=A,
            b=b,
            gamma=gamma,
            tau=tau,
            c=c,
            meta={
                "family": "random",
                "seed": str(seed),
                "params": {
                    "m": str(m),
                    "n": str(n),
                    "entry_bound": str(entry_bound),
                    "kind": kind,
                    "degenerate": str(degenerate),
                },
            },
        )
    raise GenerationFailed(f"no valid instance after 500 draws (seed {seed})")


def _first_basis(A: IntMatrix):
    from itertools import combinations

    for idx in combinations(range(A.n), A.m):
        if det(A.cols(idx)) != 0:
            return idx
    return None
