"""Named small complexes and the random corpus used by tests and the suite."""
from __future__ import annotations

import os
import random
from typing import List, Optional, Tuple

from .adc import BasedADC, Chain
from .gray import cocone, cone, point_adc, suspend, tensor, wedge
from .theta import GlobularSum, POINT, lambda_gs, simplex

FIXTURE_SUMS = ("*", "[*]", "[[*]]", "[*,*]", "[[*],*]")


def globe_adc(n: int) -> BasedADC:
    """The n-globe with generators e{k}m, e{k}p (k < n) and e{n}; D_0 is the point ``pt``."""
    if n == 0:
        return point_adc()
    basis = {f"e{n}": n}
    diff = {}
    for k in range(n):
        basis[f"e{k}m"] = k
        basis[f"e{k}p"] = k
    for k in range(1, n + 1):
        bd = Chain(k - 1, {f"e{k - 1}p": 1, f"e{k - 1}m": -1})
        for name in ((f"e{k}",) if k == n else (f"e{k}m", f"e{k}p")):
            diff[name] = bd
    return BasedADC(basis, diff, {"e0m": 1, "e0p": 1})


def simplex_adc(n: int) -> BasedADC:
    """The string of n arrows: objects v0..vn and arrows v01, v12, ..."""
    return lambda_gs(simplex(n))


def empty_adc() -> BasedADC:
    return BasedADC({})


def points_adc(k: int) -> BasedADC:
    names = [f"p{i}" for i in range(k)]
    return BasedADC({p: 0 for p in names}, {}, {p: 1 for p in names})


def seed(default: int = 0) -> int:
    """Fuzz seed, overridable through OMEGAC_SEED."""
    raw = os.environ.get("OMEGAC_SEED")
    return int(raw) if raw not in (None, "") else default


def random_gs(rng: random.Random, max_dim: int, max_width: int = 2) -> GlobularSum:
    if max_dim == 0 or rng.random() < 0.25:
        return POINT
    n = rng.randint(1, max_width)
    return GlobularSum([random_gs(rng, max_dim - 1, max_width) for _ in range(n)])


OPS = ("tensor", "cone", "cocone", "suspend", "wedge_left", "wedge_right")


def random_complex(rng: random.Random, max_dim: int = 3, max_size: int = 64,
                   steps: int = 2) -> Tuple[BasedADC, str]:
    """A random globular sum pushed through a few Gray operations.

    Returns the complex and a short recipe string.  Operations that would
    exceed the dimension or size caps are skipped.
    """
    g = random_gs(rng, rng.randint(0, 2))
    K = lambda_gs(g)
    recipe = str(g)
    for _ in range(rng.randint(0, steps)):
        op = rng.choice(OPS)
        if op == "tensor":
            h = random_gs(rng, 1)
            L = lambda_gs(h)
            if K.dim + L.dim > max_dim or len(K) * len(L) > max_size:
                continue
            K, recipe = tensor(K, L), f"({recipe})⊗{h}"
            continue
        if K.dim + 1 > max_dim or 2 * len(K) + 3 > max_size:
            continue
        if op == "cone":
            K, recipe = cone(K).complex, f"({recipe})⋆1"
        elif op == "cocone":
            K, recipe = cocone(K).complex, f"1co⋆({recipe})"
        elif op == "suspend":
            K, recipe = suspend(K).complex, f"[{recipe},1]"
        else:
            side = op.split("_")[1]
            K, recipe = wedge(K, side).complex, f"wedge_{side}({recipe})"
    return K, recipe


def fuzz_corpus(n: int = 500, rng_seed: Optional[int] = None) -> List[Tuple[BasedADC, str]]:
    rng = random.Random(seed() if rng_seed is None else rng_seed)
    return [random_complex(rng) for _ in range(n)]
