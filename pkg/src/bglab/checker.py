"""Identity-satisfaction engines, morphism verification, counterexample search.

Substitution enumeration is odometer order over the lexicographically sorted
variable list (first variable most significant), so the first counterexample
is deterministic.  Sampling uses a 64-bit counter-based splitmix generator;
verdicts from sampling never claim "holds".
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .core import FiniteAlgebra
from .errors import MapNotTotal, MissingTable
from .terms import Term, Variable, evaluate_batch

HOLDS = "holds"
COUNTEREXAMPLE = "counterexample"
NO_COUNTEREXAMPLE = "no_counterexample_found"
BUDGET_EXCEEDED = "budget_exceeded"

DEFAULT_BUDGET = 10**8
_CHUNK = 1 << 15

_SPLITMIX_GAMMA = np.uint64(0x9E3779B97F4A7C15)


def default_budget() -> int:
    """The evaluation budget; BGLAB_BUDGET in the environment overrides it."""
    raw = os.environ.get("BGLAB_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass
class CheckVerdict:
    status: str
    witness: dict[Variable, int] | None = None
    evaluations: int = 0
    seed: int | None = None
    attempted: int | None = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status in (HOLDS, NO_COUNTEREXAMPLE)


def splitmix64(counters: np.ndarray, seed: int) -> np.ndarray:
    """Counter-based splitmix64 output stream for the given seed."""
    z = (np.uint64(seed) + (counters.astype(np.uint64) + np.uint64(1))
         * _SPLITMIX_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def _variables_of(*terms: Term) -> list[Variable]:
    out: set[Variable] = set()
    for t in terms:
        out.update(t.variables())
    return sorted(out)


def _domain_lists(variables, alg, domains):
    full = list(range(alg.size))
    out = []
    for v in variables:
        if domains and v in domains:
            dom = [int(x) for x in domains[v]]
            if not dom:
                raise ValueError(f"empty domain for {v.name}")
            out.append(dom)
        else:
            out.append(full)
    return out


def _substitution_blocks(variables, doms, chunk=_CHUNK):
    """Yield (assignment, origin) covering the whole space in odometer order.

    The assignment binds a prefix of variables to scalars and the rest to
    flat index arrays of one block; origin is the odometer position of the
    block's first substitution.
    """
    sizes = [len(d) for d in doms]
    split = len(sizes)
    inner = 1
    while split > 0 and inner * sizes[split - 1] <= chunk:
        inner *= sizes[split - 1]
        split -= 1
    inner_doms = doms[split:]
    inner_sizes = sizes[split:]
    grids = []
    if inner_doms:
        mesh = np.meshgrid(*[np.asarray(d, dtype=np.int64) for d in inner_doms],
                           indexing="ij")
        grids = [g.reshape(-1) for g in mesh]
    origin = 0
    for prefix in product(*[doms[i] for i in range(split)]):
        assign = {}
        for v, value in zip(variables[:split], prefix):
            assign[v] = int(value)
        for v, arr in zip(variables[split:], grids):
            assign[v] = arr
        yield assign, origin
        origin += inner if inner_doms else 1


def _decode_witness(variables, doms, position) -> dict[Variable, int]:
    out = {}
    for v, d in zip(reversed(variables), reversed(doms)):
        position, at = divmod(position, len(d))
        out[v] = d[at]
    return out


def check_identity_exhaustive(alg: FiniteAlgebra, lhs: Term, rhs: Term,
                              domains=None, budget: int | None = None) -> CheckVerdict:
    """Enumerate every substitution; first counterexample in odometer order."""
    if budget is None:
        budget = default_budget()
    if lhs == rhs:
        return CheckVerdict(HOLDS, evaluations=0, note="syntactic equality")
    variables = _variables_of(lhs, rhs)
    doms = _domain_lists(variables, alg, domains)
    space = 1
    for d in doms:
        space *= len(d)
    if space > budget:
        return CheckVerdict(BUDGET_EXCEEDED, attempted=space,
                            note=f"{space} substitutions exceed budget {budget}")
    done = 0
    for assign, origin in _substitution_blocks(variables, doms):
        left = evaluate_batch(lhs, assign, alg)
        right = evaluate_batch(rhs, assign, alg)
        neq = np.atleast_1d(left != right)
        done += neq.size
        if neq.any():
            at = origin + int(np.argmax(neq))
            return CheckVerdict(COUNTEREXAMPLE,
                                witness=_decode_witness(variables, doms, at),
                                evaluations=done)
    return CheckVerdict(HOLDS, evaluations=done)


def check_membership_exhaustive(alg: FiniteAlgebra, term: Term, allowed,
                                domains=None, budget: int | None = None) -> CheckVerdict:
    """Check that every substitution value lands in the allowed element set."""
    if budget is None:
        budget = default_budget()
    variables = _variables_of(term)
    doms = _domain_lists(variables, alg, domains)
    space = 1
    for d in doms:
        space *= len(d)
    if space > budget:
        return CheckVerdict(BUDGET_EXCEEDED, attempted=space,
                            note=f"{space} substitutions exceed budget {budget}")
    mask = np.zeros(alg.size, dtype=bool)
    mask[sorted(int(x) for x in allowed)] = True
    done = 0
    for assign, origin in _substitution_blocks(variables, doms):
        values = np.atleast_1d(evaluate_batch(term, assign, alg))
        bad = ~mask[values]
        done += bad.size
        if bad.any():
            at = origin + int(np.argmax(bad))
            return CheckVerdict(COUNTEREXAMPLE,
                                witness=_decode_witness(variables, doms, at),
                                evaluations=done)
    return CheckVerdict(HOLDS, evaluations=done)


def sample_assignments(variables, doms, seed: int, start: int, count: int):
    """Deterministic sample block: variable j of sample s uses counter s*V + j."""
    V = len(variables)
    out = {}
    base = (np.arange(start, start + count, dtype=np.uint64) * np.uint64(V))
    for j, (v, d) in enumerate(zip(variables, doms)):
        stream = splitmix64(base + np.uint64(j), seed)
        picks = (stream % np.uint64(len(d))).astype(np.int64)
        out[v] = np.asarray(d, dtype=np.int64)[picks]
    return out


def check_identity_sampled(alg: FiniteAlgebra, lhs: Term, rhs: Term,
                           samples: int, seed: int, domains=None) -> CheckVerdict:
    """Seeded search; reports a counterexample or no_counterexample_found,
    never "holds"."""
    variables = _variables_of(lhs, rhs)
    doms = _domain_lists(variables, alg, domains)
    done = 0
    for start in range(0, samples, _CHUNK):
        count = min(_CHUNK, samples - start)
        assign = sample_assignments(variables, doms, seed, start, count)
        left = evaluate_batch(lhs, assign, alg)
        right = evaluate_batch(rhs, assign, alg)
        neq = np.atleast_1d(left != right)
        done += neq.size
        if neq.any():
            s = int(np.argmax(neq))
            witness = {v: int(assign[v][s]) for v in variables}
            return CheckVerdict(COUNTEREXAMPLE, witness=witness,
                                evaluations=done, seed=seed)
    return CheckVerdict(NO_COUNTEREXAMPLE, evaluations=done, seed=seed)


def find_identity_violation(alg: FiniteAlgebra, lhs: Term, rhs: Term,
                            strategy: str = "exhaustive", generators=None,
                            budget: int | None = None, samples: int = 10_000,
                            seed: int = 1) -> CheckVerdict:
    """Counterexample search with a pluggable substitution order.

    generator-biased reorders every domain so a designated generator set is
    tried first; the reported witness is minimal in that biased order.
    """
    if strategy == "exhaustive":
        return check_identity_exhaustive(alg, lhs, rhs, budget=budget)
    if strategy == "generator-biased":
        if not generators:
            raise ValueError("generator-biased strategy needs a generator set")
        gens = [int(g) for g in generators]
        rest = [x for x in range(alg.size) if x not in set(gens)]
        biased = gens + rest
        domains = {v: biased for v in _variables_of(lhs, rhs)}
        return check_identity_exhaustive(alg, lhs, rhs, domains=domains,
                                         budget=budget)
    if strategy == "sampled":
        return check_identity_sampled(alg, lhs, rhs, samples=samples, seed=seed)
    raise ValueError(f"unknown strategy {strategy!r}")


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class MorphismSpec:
    source: FiniteAlgebra
    target: FiniteAlgebra
    mapping: tuple[int, ...]
    ops: tuple[str, ...] = ("mul",)


@dataclass(frozen=True)
class MorphismReport:
    ok: bool
    failure: tuple[str, tuple[int, ...]] | None
    surjective: bool
    injective: bool


def verify_morphism(spec: MorphismSpec) -> MorphismReport:
    """Check f(x o y) = f(x) o f(y) per requested op, star pointwise."""
    src, dst = spec.source, spec.target
    if len(spec.mapping) != src.size:
        raise MapNotTotal(f"mapping covers {len(spec.mapping)} of {src.size} elements")
    f = np.asarray(spec.mapping, dtype=np.int64)
    if f.min() < 0 or f.max() >= dst.size:
        raise MapNotTotal("mapping hits indices outside the target")
    failure = None
    for op in spec.ops:
        if op in ("mul", "add"):
            s_table = src.mul if op == "mul" else src.add
            t_table = dst.mul if op == "mul" else dst.add
            if s_table is None or t_table is None:
                raise MissingTable(f"{op} table missing on one side")
            lhs = f[s_table]
            rhs = t_table[np.ix_(f, f)]
            neq = lhs != rhs
            if neq.any():
                x, y = np.unravel_index(int(np.argmax(neq)), neq.shape)
                failure = (op, (int(x), int(y)))
                break
        elif op == "star":
            if src.star is None or dst.star is None:
                raise MissingTable("star table missing on one side")
            neq = f[src.star] != dst.star[f]
            if neq.any():
                failure = ("star", (int(np.argmax(neq)),))
                break
        else:
            raise ValueError(f"unknown op {op!r}")
    image = set(int(x) for x in f)
    return MorphismReport(
        ok=failure is None,
        failure=failure,
        surjective=len(image) == dst.size,
        injective=len(image) == src.size,
    )


# ---------------------------------------------------------------------------
# block-value image technique for the v-family square identities


@dataclass
class ImageCheck:
    """Exact verdict for "depth-h block word = its square" computed from the
    per-level image sets of block values (valid because sibling blocks use
    disjoint alphabets, so block values vary independently)."""

    status: str
    level_sizes: list[int] = field(default_factory=list)
    evaluations: int = 0
    bad_value: int | None = None
    witness: dict[Variable, int] | None = None

    @property
    def ok(self) -> bool:
        return self.status == HOLDS


def _fold_tuple_values(alg, arrays, n, m):
    """Value of b1..b2n (bn..b1 b(n+1)..b2n)^(2m-1) for vectors of block values."""
    mul = alg.mul

    def pair(a, b):
        return mul[a, b]

    prefix = arrays[0]
    for a in arrays[1:]:
        prefix = pair(prefix, a)
    mid_order = list(arrays[n - 1 :: -1]) + list(arrays[n:])
    middle = mid_order[0]
    for a in mid_order[1:]:
        middle = pair(middle, a)
    e = 2 * m - 1
    result = None
    base = middle
    while True:
        if e & 1:
            result = base if result is None else pair(result, base)
        e >>= 1
        if not e:
            break
        base = pair(base, base)
    return pair(prefix, result)


def _grid_images(alg, values, n, m, keep_preimages):
    """Image set of the outer shape over all 2n-tuples from `values`."""
    vals = np.asarray(sorted(values), dtype=np.int64)
    k = len(vals)
    width = 2 * n
    if k**width > DEFAULT_BUDGET:
        raise ValueError(f"{k}^{width} block-value tuples exceed the budget")
    found: dict[int, tuple] = {}
    # chunk on the first coordinate; inner grid is k^(2n-1)
    mesh = np.meshgrid(*([vals] * (width - 1)), indexing="ij")
    flats = [g.reshape(-1) for g in mesh]
    inner = flats[0].size if flats else 1
    evals = 0
    for first in vals:
        arrays = [np.full(inner, first, dtype=np.int64)] + flats
        out = _fold_tuple_values(alg, arrays, n, m)
        evals += inner
        if keep_preimages:
            uniq, idx = np.unique(out, return_index=True)
            for u, at in zip(uniq, idx):
                if int(u) not in found:
                    pre = tuple(int(a[at]) for a in arrays)
                    found[int(u)] = pre
        else:
            for u in np.unique(out):
                found.setdefault(int(u), ())
    return found, evals


def check_v_square_image(alg: FiniteAlgebra, n: int, m: int, h: int,
                         keep_preimages: bool = True) -> ImageCheck:
    """Exact check of v = v^2 at depth h via level-by-level image sets."""
    if n < 1 or m < 1 or h < 1:
        raise ValueError("need n, m, h >= 1")
    carrier = list(range(alg.size))
    level_pre: list[dict[int, tuple]] = []
    images, evals = _grid_images(alg, carrier, n, m, keep_preimages)
    level_pre.append(images)
    sizes = [len(images)]
    total = evals
    for _ in range(h - 1):
        images, evals = _grid_images(alg, sorted(images.keys()), n, m, keep_preimages)
        level_pre.append(images)
        sizes.append(len(images))
        total += evals
    mul = alg.mul
    bad = next((w for w in sorted(level_pre[-1].keys()) if int(mul[w, w]) != w), None)
    if bad is None:
        return ImageCheck(HOLDS, sizes, total)
    witness = _expand_witness(level_pre, bad, n, h) if keep_preimages else None
    return ImageCheck(COUNTEREXAMPLE, sizes, total, bad_value=bad, witness=witness)


def _expand_witness(level_pre, bad_value, n, h) -> dict[Variable, int]:
    """Unfold stored preimages into a substitution for the depth-h variables."""
    width = 2 * n

    def expand(level, value, suffix, out):
        pre = level_pre[level][value]
        if level == 0:
            for i, elem in enumerate(pre, start=1):
                out[Variable((i,) + suffix, width)] = elem
        else:
            for j, child in enumerate(pre, start=1):
                expand(level - 1, child, (j,) + suffix, out)

    out: dict[Variable, int] = {}
    expand(h - 1, bad_value, (), out)
    return out
