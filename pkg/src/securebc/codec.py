"""Monte Carlo realization of the double-binning random-coding scheme.

The pipeline mirrors the coding argument it validates:

1. :func:`build_codebook` draws one shared typical sequence over U and, per
   user ``t``, a table of codeword sequences over V_t arranged into bins
   (message index ``i``), sub-bins (secrecy randomization index ``j``) and
   in-sub-bin candidates (state-matching index ``k``).  Table sizes are
   ``2**(N*rate)`` rounded to the nearest integer, at least 1.
2. :func:`encode` picks the sub-bins at random (the stochastic encoder),
   scans candidate pairs ``(k1, k2)`` in lexicographic order for the first
   pair jointly typical with the given state sequence, then draws the
   channel input symbol-by-symbol.  Finding no pair is a counted outcome,
   not an exception.
3. :func:`decode` searches a whole table for sequences jointly typical with
   the received block; anything other than exactly one matching bin index
   is a decoding failure.
4. :func:`simulate` runs independent trials (fresh messages and state per
   trial) against the memoryless channel and reports decoding error,
   encoder failure and estimated leakage.
5. :func:`estimate_leakage` measures the secrecy actually delivered: it
   samples eavesdropper blocks from the true encode-and-transmit process
   and computes the posterior over messages exactly, by enumerating every
   (bin, sub-bin, candidate) index of both users against the fixed
   codebook and the per-letter channel law averaged over the state.

Typicality is the strong (frequency) kind: every joint symbol frequency of
the tuple must sit within ``epsilon`` of its probability, and symbols of
probability zero must not occur at all.

All randomness derives from the configuration seed through fixed stream
labels: the codebook uses ``(seed, 0)``, trial ``t`` uses ``(seed, 1, t)``
and the leakage estimator for message ``t`` uses ``(seed, 2, t)``.  Results
are therefore bit-reproducible and independent of scheduling; a built
codebook is immutable and may be shared across concurrent trials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .channel import (
    ChannelSpec,
    CodingScheme,
    aux_conditionals,
    induced_joint,
    require_valid,
)
from .errors import CapacityError, DegenerateSchemeError, DomainError
from .probcore import JointDistribution

# Work-array ceiling for chunked scans (elements, not bytes).
CHUNK_CELLS = 1 << 22

# Total codeword-symbol ceiling for one codebook.
CODEBOOK_CELL_CAP = 50_000_000

# Attempts before giving up on drawing a typical shared sequence.
U_RETRY_CAP = 1000


@dataclass(frozen=True)
class RateAllocation:
    """The six per-user rates in bits per channel use.

    ``r1, r2`` carry messages, ``rp1, rp2`` are the secrecy randomization
    rates and ``rs1, rs2`` are the state-matching binning rates.
    """

    r1: float
    r2: float
    rp1: float
    rp2: float
    rs1: float
    rs2: float

    def __post_init__(self):
        for field in ("r1", "r2", "rp1", "rp2", "rs1", "rs2"):
            value = getattr(self, field)
            if not (value >= 0.0 and math.isfinite(value)):
                raise DomainError(f"RateAllocation.{field} must be finite and >= 0, got {value}")

    def as_dict(self) -> dict[str, float]:
        return {
            "R1": self.r1,
            "R2": self.r2,
            "Rp1": self.rp1,
            "Rp2": self.rp2,
            "Rs1": self.rs1,
            "Rs2": self.rs2,
        }


@dataclass(frozen=True)
class CodebookConfig:
    """Block length, rates, typicality slack, seed and trial count."""

    block_length: int
    rates: RateAllocation
    epsilon: float
    seed: int
    trials: int

    def __post_init__(self):
        if self.block_length < 1:
            raise DomainError(f"block_length must be >= 1, got {self.block_length}")
        if not self.epsilon > 0.0:
            raise DomainError(f"epsilon must be > 0, got {self.epsilon}")
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class Estimate:
    """A Monte Carlo estimate with its standard error and sample count."""

    value: float
    stderr: float
    n: int


@dataclass(frozen=True)
class SimulationReport:
    """Aggregated outcome of one simulate run."""

    realized_rates: RateAllocation
    decode_error: tuple[Estimate, Estimate]
    encoder_failure: float
    trials_transmitted: int
    leakage: tuple[Optional[Estimate], Optional[Estimate]]
    config: CodebookConfig

    def to_dict(self) -> dict:
        def est(e: Optional[Estimate]):
            if e is None:
                return None
            return {"value": e.value, "stderr": e.stderr, "n": e.n}

        return {
            "realized_rates": self.realized_rates.as_dict(),
            "decode_error": [est(self.decode_error[0]), est(self.decode_error[1])],
            "encoder_failure": self.encoder_failure,
            "trials_transmitted": self.trials_transmitted,
            "leakage": [est(self.leakage[0]), est(self.leakage[1])],
            "config": {
                "N": self.config.block_length,
                "epsilon": self.config.epsilon,
                "seed": self.config.seed,
                "trials": self.config.trials,
                "rates": self.config.rates.as_dict(),
            },
        }


# -- rate assignment --------------------------------------------------------------


def assign_rates(joint: JointDistribution, margin: float) -> RateAllocation:
    """Rates making the coding argument go through, with ``margin`` bits of slack.

    The randomization rates are set just below the eavesdroppers' resolving
    power, the binning rates just above every state-matching floor (both the
    per-user floors and their sum constraint), and whatever is left of each
    direct link carries the message.  Clamping at zero means an infeasible
    corner yields zero message rate instead of an error.
    """
    if not margin > 0.0:
        raise DomainError(f"margin must be > 0, got {margin}")
    mi = joint.mutual_information
    i_v1y2 = mi(("V1",), ("Y2",), ("U", "V2"))
    i_v2y1 = mi(("V2",), ("Y1",), ("U", "V1"))
    i_v1v2 = mi(("V1",), ("V2",), ("U",))
    i_wv1 = mi(("W",), ("V1",), ("U",))
    i_wv2 = mi(("W",), ("V2",), ("U",))
    i_v12w = mi(("V1", "V2"), ("W",), ("U",))
    i_v1y1 = mi(("V1",), ("Y1",), ("U",))
    i_v2y2 = mi(("V2",), ("Y2",), ("U",))

    rp1 = max(0.0, i_v1y2 - margin)
    rp2 = max(0.0, i_v2y1 - margin)
    rs1 = max(i_v1v2, i_wv1) + margin
    rs2 = max(i_v1v2, i_wv2) + margin
    need = i_v1v2 + i_v12w + 2.0 * margin
    if rs1 + rs2 < need:
        lift = 0.5 * (need - rs1 - rs2)
        rs1 += lift
        rs2 += lift
    r1 = max(0.0, i_v1y1 - rp1 - rs1 - margin)
    r2 = max(0.0, i_v2y2 - rp2 - rs2 - margin)
    return RateAllocation(r1, r2, rp1, rp2, rs1, rs2)


def binning_feasibility(joint: JointDistribution, rates: RateAllocation) -> list[str]:
    """Check the decoding and binning constraints; empty list means feasible.

    The decoding constraints require each user's total codebook rate to stay
    strictly below its direct-link information; the binning constraints
    require each state-matching rate strictly above its floor and their sum
    strictly above the joint floor.  Boundary equality counts as a violation.
    """
    mi = joint.mutual_information
    i_v1y1 = mi(("V1",), ("Y1",), ("U",))
    i_v2y2 = mi(("V2",), ("Y2",), ("U",))
    i_v1v2 = mi(("V1",), ("V2",), ("U",))
    i_wv1 = mi(("W",), ("V1",), ("U",))
    i_wv2 = mi(("W",), ("V2",), ("U",))
    i_v12w = mi(("V1", "V2"), ("W",), ("U",))
    out: list[str] = []
    total1 = rates.r1 + rates.rp1 + rates.rs1
    total2 = rates.r2 + rates.rp2 + rates.rs2
    if not total1 < i_v1y1:
        out.append(
            f"decoding bound (user 1): R1+Rp1+Rs1 = {total1!r} is not < I(V1;Y1|U) = {i_v1y1!r}"
        )
    if not total2 < i_v2y2:
        out.append(
            f"decoding bound (user 2): R2+Rp2+Rs2 = {total2!r} is not < I(V2;Y2|U) = {i_v2y2!r}"
        )
    if not rates.rs1 > i_wv1:
        out.append(
            f"binning floor (user 1): Rs1 = {rates.rs1!r} is not > I(W;V1|U) = {i_wv1!r}"
        )
    if not rates.rs2 > i_wv2:
        out.append(
            f"binning floor (user 2): Rs2 = {rates.rs2!r} is not > I(W;V2|U) = {i_wv2!r}"
        )
    floor = i_v1v2 + i_v12w
    if not rates.rs1 + rates.rs2 > floor:
        out.append(
            f"binning sum floor: Rs1+Rs2 = {rates.rs1 + rates.rs2!r} is not > "
            f"I(V1;V2|U)+I(V1,V2;W|U) = {floor!r}"
        )
    return out


# -- typicality ---------------------------------------------------------------------


def _typical_rows(idx: np.ndarray, k: int, n: int, pmf_flat: np.ndarray, eps: float) -> np.ndarray:
    """Strong-typicality mask for many sequences at once.

    ``idx`` holds one flattened joint symbol per position, shape (rows, n).
    """
    rows = idx.shape[0]
    out = np.empty(rows, dtype=bool)
    zero = pmf_flat == 0.0
    any_zero = bool(zero.any())
    target = n * pmf_flat
    slack = n * eps + 1e-9
    chunk = max(1, CHUNK_CELLS // max(1, k))
    for s in range(0, rows, chunk):
        block = idx[s : s + chunk]
        m = block.shape[0]
        offsets = (np.arange(m, dtype=np.int64) * k)[:, None]
        counts = np.bincount((block + offsets).ravel(), minlength=m * k).reshape(m, k)
        ok = (np.abs(counts - target) <= slack).all(axis=1)
        if any_zero:
            ok &= (counts[:, zero] == 0).all(axis=1)
        out[s : s + chunk] = ok
    return out


def is_typical(seqs: Sequence[np.ndarray], pmf: np.ndarray, eps: float) -> bool:
    """Whether a tuple of aligned sequences is jointly eps-typical for ``pmf``."""
    pmf = np.asarray(pmf, dtype=float)
    if len(seqs) != pmf.ndim:
        raise DomainError(f"{len(seqs)} sequences for a {pmf.ndim}-way mass tensor")
    arrs = [np.asarray(s, dtype=np.int64) for s in seqs]
    n = arrs[0].shape[0]
    for a in arrs:
        if a.shape != (n,):
            raise DomainError("all sequences must share one length")
    idx = np.ravel_multi_index(tuple(arrs), pmf.shape)
    return bool(_typical_rows(idx[None, :], pmf.size, n, pmf.reshape(-1), eps)[0])


# -- sampling helpers ----------------------------------------------------------------


def _sample_iid(pmf: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
    cdf = np.cumsum(pmf)
    idx = np.searchsorted(cdf, rng.random(n), side="right")
    return np.minimum(idx, pmf.shape[0] - 1).astype(np.int64)


def _sample_rows(cdf_rows: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """One draw per row of a (n, k) array of cumulative distributions."""
    r = rng.random(cdf_rows.shape[0])
    idx = (r[:, None] >= cdf_rows).sum(axis=1)
    return np.minimum(idx, cdf_rows.shape[1] - 1).astype(np.int64)


def _sample_table(cdf_rows: np.ndarray, count: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``count`` independent sequences, position ``n`` from ``cdf_rows[n]``."""
    n, k = cdf_rows.shape
    out = np.empty((count, n), dtype=np.int64)
    chunk = max(1, CHUNK_CELLS // max(1, n * k))
    for s in range(0, count, chunk):
        c = min(chunk, count - s)
        r = rng.random((c, n))
        idx = (r[:, :, None] >= cdf_rows[None, :, :]).sum(axis=2)
        out[s : s + c] = np.minimum(idx, k - 1)
    return out


def _table_size(n: int, rate: float) -> int:
    return max(1, int(round(2.0 ** (n * rate))))


# -- the codebook --------------------------------------------------------------------


@dataclass(frozen=True)
class Codebook:
    """A fixed random codebook plus everything needed to run it.

    ``v1`` and ``v2`` are indexed ``[i][j][k][position]``.  The derived
    arrays (typicality targets, decoding indices, sampling CDFs) are caches
    computed once at construction; the codebook is immutable afterwards.
    """

    spec: ChannelSpec
    scheme: CodingScheme
    config: CodebookConfig
    u_seq: np.ndarray
    v1: np.ndarray
    v2: np.ndarray
    n_i1: int
    n_j1: int
    n_k1: int
    n_i2: int
    n_j2: int
    n_k2: int
    encode_pmf: np.ndarray
    decode_pmf1: np.ndarray
    decode_pmf2: np.ndarray
    dec_idx1: np.ndarray
    dec_idx2: np.ndarray
    input_cdf: np.ndarray

    @property
    def realized_rates(self) -> RateAllocation:
        n = self.config.block_length
        return RateAllocation(
            math.log2(self.n_i1) / n,
            math.log2(self.n_i2) / n,
            math.log2(self.n_j1) / n,
            math.log2(self.n_j2) / n,
            math.log2(self.n_k1) / n,
            math.log2(self.n_k2) / n,
        )


def build_codebook(spec: ChannelSpec, scheme: CodingScheme, cfg: CodebookConfig) -> Codebook:
    """Draw the codebook for ``cfg.seed``; bit-identical across runs."""
    require_valid(spec, scheme)
    n = cfg.block_length
    n_i1 = _table_size(n, cfg.rates.r1)
    n_j1 = _table_size(n, cfg.rates.rp1)
    n_k1 = _table_size(n, cfg.rates.rs1)
    n_i2 = _table_size(n, cfg.rates.r2)
    n_j2 = _table_size(n, cfg.rates.rp2)
    n_k2 = _table_size(n, cfg.rates.rs2)
    m1 = n_i1 * n_j1 * n_k1
    m2 = n_i2 * n_j2 * n_k2
    if (m1 + m2) * n > CODEBOOK_CELL_CAP:
        raise CapacityError(
            f"codebook would hold {(m1 + m2) * n} symbols, exceeding "
            f"{CODEBOOK_CELL_CAP}; reduce the block length or the rates"
        )

    rng = np.random.default_rng([cfg.seed, 0])
    u_seq = None
    for _ in range(U_RETRY_CAP):
        candidate = _sample_iid(scheme.u_law, n, rng)
        if is_typical([candidate], scheme.u_law, cfg.epsilon):
            u_seq = candidate
            break
    if u_seq is None:
        raise DegenerateSchemeError(
            f"no eps-typical shared sequence found in {U_RETRY_CAP} draws "
            f"(N={n}, epsilon={cfg.epsilon}); the scheme's u-law is too skewed "
            f"for this block length"
        )

    pv1_u, pv2_u = aux_conditionals(spec, scheme)
    v1 = _sample_table(np.cumsum(pv1_u, axis=1)[u_seq], m1, rng).reshape(
        n_i1, n_j1, n_k1, n
    )
    v2 = _sample_table(np.cumsum(pv2_u, axis=1)[u_seq], m2, rng).reshape(
        n_i2, n_j2, n_k2, n
    )

    encode_pmf = np.einsum("u,w,wuab->uwab", scheme.u_law, spec.state_law, scheme.aux_law)
    joint = induced_joint(spec, scheme)
    decode_pmf1 = joint.marginalize(("U", "V1", "Y1")).mass
    decode_pmf2 = joint.marginalize(("U", "V2", "Y2")).mass
    dec_idx1 = u_seq[None, :] * scheme.v1_card + v1.reshape(m1, n)
    dec_idx2 = u_seq[None, :] * scheme.v2_card + v2.reshape(m2, n)

    return Codebook(
        spec=spec,
        scheme=scheme,
        config=cfg,
        u_seq=u_seq,
        v1=v1,
        v2=v2,
        n_i1=n_i1,
        n_j1=n_j1,
        n_k1=n_k1,
        n_i2=n_i2,
        n_j2=n_j2,
        n_k2=n_k2,
        encode_pmf=encode_pmf,
        decode_pmf1=decode_pmf1,
        decode_pmf2=decode_pmf2,
        dec_idx1=dec_idx1,
        dec_idx2=dec_idx2,
        input_cdf=np.cumsum(scheme.input_law, axis=3),
    )


# -- encoding, transmission, decoding -------------------------------------------------


def encode(
    cb: Codebook,
    m1: int,
    m2: int,
    w_seq: np.ndarray,
    rng: np.random.Generator,
) -> Optional[np.ndarray]:
    """Encode a message pair against a given state sequence.

    Draws the two sub-bin indices at random, scans candidate pairs
    ``(k1, k2)`` lexicographically for the first one jointly typical with
    the state, and emits the channel input; returns ``None`` when no
    candidate pair qualifies (the counted encoder-failure event).
    """
    n = cb.config.block_length
    eps = cb.config.epsilon
    if not 0 <= m1 < cb.n_i1:
        raise DomainError(f"message 1 out of range: {m1} not in [0, {cb.n_i1})")
    if not 0 <= m2 < cb.n_i2:
        raise DomainError(f"message 2 out of range: {m2} not in [0, {cb.n_i2})")
    w_seq = np.asarray(w_seq, dtype=np.int64)
    if w_seq.shape != (n,):
        raise DomainError(f"state sequence must have length {n}, got shape {w_seq.shape}")
    if w_seq.min() < 0 or w_seq.max() >= cb.spec.w_card:
        raise DomainError("state sequence contains out-of-alphabet symbols")

    j1 = int(rng.integers(cb.n_j1))
    j2 = int(rng.integers(cb.n_j2))
    v1_block = cb.v1[m1, j1]  # (n_k1, n)
    v2_block = cb.v2[m2, j2]  # (n_k2, n)

    v1c = cb.scheme.v1_card
    v2c = cb.scheme.v2_card
    k_cells = cb.encode_pmf.size
    pmf_flat = cb.encode_pmf.reshape(-1)
    base = (cb.u_seq * cb.spec.w_card + w_seq)[None, :]  # (1, n)
    idx1 = (base * v1c + v1_block) * v2c  # (n_k1, n)

    hit = None
    chunk = max(1, CHUNK_CELLS // max(1, cb.n_k2 * n))
    for s in range(0, cb.n_k1, chunk):
        block = idx1[s : s + chunk][:, None, :] + v2_block[None, :, :]
        pairs = block.shape[0] * block.shape[1]
        ok = _typical_rows(block.reshape(pairs, n), k_cells, n, pmf_flat, eps)
        found = np.flatnonzero(ok)
        if found.size:
            p = int(found[0])
            hit = (s + p // cb.n_k2, p % cb.n_k2)
            break
    if hit is None:
        return None
    k1, k2 = hit
    rows = cb.input_cdf[w_seq, v1_block[k1], v2_block[k2]]  # (n, |X|)
    return _sample_rows(rows, rng)


def transmit(
    spec: ChannelSpec,
    x_seq: np.ndarray,
    w_seq: np.ndarray,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Pass a block through the memoryless channel; returns (y1, y2)."""
    y1c, y2c = spec.y1_card, spec.y2_card
    flat = spec.channel_law.reshape(spec.x_card, spec.w_card, y1c * y2c)
    rows = np.cumsum(flat, axis=2)[x_seq, w_seq]  # (n, y1c*y2c)
    y = _sample_rows(rows, rng)
    return y // y2c, y % y2c


def decode(cb: Codebook, t: int, y_seq: np.ndarray) -> Optional[int]:
    """Decode one receiver's block to a bin index.

    Every table entry is tested for joint typicality with the received
    block; the decoder answers only when exactly one distinct bin index
    survives, and reports failure (``None``) on zero or several.
    """
    if t == 1:
        dec_idx, pmf, yc, group = cb.dec_idx1, cb.decode_pmf1, cb.spec.y1_card, cb.n_j1 * cb.n_k1
    elif t == 2:
        dec_idx, pmf, yc, group = cb.dec_idx2, cb.decode_pmf2, cb.spec.y2_card, cb.n_j2 * cb.n_k2
    else:
        raise DomainError(f"receiver index must be 1 or 2, got {t}")
    n = cb.config.block_length
    y_seq = np.asarray(y_seq, dtype=np.int64)
    if y_seq.shape != (n,):
        raise DomainError(f"received block must have length {n}, got shape {y_seq.shape}")
    idx = dec_idx * yc + y_seq[None, :]
    ok = _typical_rows(idx, pmf.size, n, pmf.reshape(-1), cb.config.epsilon)
    bins = np.unique(np.flatnonzero(ok) // group)
    if bins.shape[0] == 1:
        return int(bins[0])
    return None


# -- simulation -----------------------------------------------------------------------


def _binomial(successes: int, n: int) -> Estimate:
    if n == 0:
        return Estimate(math.nan, math.nan, 0)
    p = successes / n
    return Estimate(p, math.sqrt(p * (1.0 - p) / n), n)


def simulate(
    spec: ChannelSpec,
    scheme: CodingScheme,
    cfg: CodebookConfig,
    leakage_samples: int = 200,
) -> SimulationReport:
    """Run ``cfg.trials`` independent trials and aggregate the outcomes.

    Each trial draws fresh uniform messages and a fresh state sequence,
    encodes, transmits, and decodes at both receivers.  Decoding error is
    reported over the trials that actually transmitted (encoder failures
    are counted separately).  Leakage per message is estimated afterwards
    on the same codebook; pass ``leakage_samples=0`` to skip it.
    """
    cb = build_codebook(spec, scheme, cfg)
    n = cfg.block_length
    errors = [0, 0]
    transmitted = 0
    failures = 0
    for trial in range(cfg.trials):
        rng = np.random.default_rng([cfg.seed, 1, trial])
        m1 = int(rng.integers(cb.n_i1))
        m2 = int(rng.integers(cb.n_i2))
        w_seq = _sample_iid(spec.state_law, n, rng)
        x_seq = encode(cb, m1, m2, w_seq, rng)
        if x_seq is None:
            failures += 1
            continue
        transmitted += 1
        y1, y2 = transmit(spec, x_seq, w_seq, rng)
        if decode(cb, 1, y1) != m1:
            errors[0] += 1
        if decode(cb, 2, y2) != m2:
            errors[1] += 1
    leakage: tuple[Optional[Estimate], Optional[Estimate]] = (None, None)
    if leakage_samples > 0:
        leakage = (
            estimate_leakage(cb, 1, leakage_samples, np.random.default_rng([cfg.seed, 2, 1])),
            estimate_leakage(cb, 2, leakage_samples, np.random.default_rng([cfg.seed, 2, 2])),
        )
    return SimulationReport(
        realized_rates=cb.realized_rates,
        decode_error=(_binomial(errors[0], transmitted), _binomial(errors[1], transmitted)),
        encoder_failure=failures / cfg.trials,
        trials_transmitted=transmitted,
        leakage=leakage,
        config=cfg,
    )


# -- leakage --------------------------------------------------------------------------


def _logsumexp2(a: np.ndarray, axis: int) -> np.ndarray:
    top = np.max(a, axis=axis, keepdims=True)
    safe = np.where(np.isfinite(top), top, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = safe.squeeze(axis) + np.log2(np.sum(np.exp2(a - safe), axis=axis))
    return np.where(np.isfinite(top).squeeze(axis), out, -np.inf)


def estimate_leakage(
    cb: Codebook,
    t: int,
    samples: int,
    rng: np.random.Generator,
    max_enumeration: int = 50_000_000,
) -> Estimate:
    """Estimate the per-use information the unintended receiver gets about message ``t``.

    Samples eavesdropper blocks from the true encode-and-transmit process,
    then computes the block's likelihood under every message by enumerating
    all (bin, sub-bin, candidate) indices of both users with uniform index
    weights, the channel acting per letter with the state averaged out.
    The estimate is the mean of ``log2 p(y|m) - log2 p(y)`` over samples,
    divided by the block length; it is clamped at 0, since the quantity it
    estimates is nonnegative and only sampling noise can push it below.

    Raises :class:`CapacityError` when the enumeration (rows of user t
    times rows of the other user times block length) exceeds
    ``max_enumeration``; use a smaller block length or smaller rates.
    """
    if t not in (1, 2):
        raise DomainError(f"message index must be 1 or 2, got {t}")
    if samples < 1:
        raise DomainError(f"samples must be >= 1, got {samples}")
    n = cb.config.block_length
    spec, scheme = cb.spec, cb.scheme
    if t == 1:
        per_letter = np.einsum(
            "w,wabx,xwz->abz",
            spec.state_law,
            scheme.input_law,
            spec.channel_law.sum(axis=2),
        )
        rows_t = cb.v1.reshape(-1, n)
        rows_o = cb.v2.reshape(-1, n)
        n_bins, group = cb.n_i1, cb.n_j1 * cb.n_k1
    else:
        per_letter = np.einsum(
            "w,wabx,xwy->bay",
            spec.state_law,
            scheme.input_law,
            spec.channel_law.sum(axis=3),
        )
        rows_t = cb.v2.reshape(-1, n)
        rows_o = cb.v1.reshape(-1, n)
        n_bins, group = cb.n_i2, cb.n_j2 * cb.n_k2
    m_t, m_o = rows_t.shape[0], rows_o.shape[0]
    cost = m_t * m_o * n
    if cost > max_enumeration:
        raise CapacityError(
            f"leakage enumeration needs {cost} cells (> {max_enumeration}); "
            f"use a smaller block length or smaller rates"
        )
    with np.errstate(divide="ignore"):
        logq = np.log2(per_letter)  # (card_t, card_o, card_y); -inf at zero mass

    positions = np.arange(n)
    values = np.empty(samples)
    attempts_left = 1000 + 100 * samples
    for s in range(samples):
        while True:
            attempts_left -= 1
            if attempts_left < 0:
                raise DegenerateSchemeError(
                    "encoder failed too often while sampling eavesdropper blocks; "
                    "the scheme cannot realize its own typicality condition"
                )
            m1 = int(rng.integers(cb.n_i1))
            m2 = int(rng.integers(cb.n_i2))
            w_seq = _sample_iid(spec.state_law, n, rng)
            x_seq = encode(cb, m1, m2, w_seq, rng)
            if x_seq is not None:
                break
        y1, y2 = transmit(spec, x_seq, w_seq, rng)
        y = y2 if t == 1 else y1
        m_true = m1 if t == 1 else m2

        grid = logq[:, :, y]  # (card_t, card_o, n)
        gathered = grid[rows_t, :, positions[None, :]]  # (m_t, n, card_o)
        scores = np.zeros((m_t, m_o))
        for pos in range(n):
            scores += gathered[:, pos, :][:, rows_o[:, pos]]
        per_row = _logsumexp2(scores, axis=1) - math.log2(m_o)  # (m_t,)
        per_bin = _logsumexp2(per_row.reshape(n_bins, group), axis=1) - math.log2(group)
        overall = _logsumexp2(per_bin, axis=0) - math.log2(n_bins)
        values[s] = (per_bin[m_true] - overall) / n

    mean = float(values.mean())
    stderr = float(values.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return Estimate(max(0.0, mean), stderr, samples)
