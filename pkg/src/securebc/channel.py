"""State-dependent broadcast channel and coding-scheme descriptions.

A :class:`ChannelSpec` holds the memoryless channel: the state law p(w) and
the transition law p(y1,y2|x,w).  A :class:`CodingScheme` holds the
auxiliary layer: p(u), p(v1,v2|w,u) and p(x|w,v1,v2).  Together they induce
the seven-variable joint

    p(w,u,v1,v2,x,y1,y2) =
        p(w) p(u) p(v1,v2|w,u) p(x|w,v1,v2) p(y1,y2|x,w)

which is the single object all rate evaluations are computed from.  A
channel that ignores the state is simply a law constant in ``w``.

The JSON document format (see :func:`load_spec`) fixes index orders
bit-exactly:

- ``state_law``: flat array indexed ``[w]``.
- ``channel_law``: nested arrays indexed ``[x][w][y1][y2]``.
- ``scheme.u_law``: flat array indexed ``[u]``.
- ``scheme.aux_law``: nested arrays indexed ``[w][u][v1][v2]``.
- ``scheme.input_law``: nested arrays indexed ``[w][v1][v2][x]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CapacityError, DomainError, ParseError
from .probcore import MAX_CELLS, JointDistribution, Variable

JOINT_NAMES = ("W", "U", "V1", "V2", "X", "Y1", "Y2")

# Conditional slices must sum to 1 within this.
LAW_TOL = 1e-12


def _as_law(arr, ndim: int, what: str) -> np.ndarray:
    try:
        out = np.asarray(arr, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{what} is not a numeric array: {exc}") from exc
    if out.ndim != ndim:
        raise DomainError(f"{what} must have {ndim} axes, got shape {out.shape}")
    if 0 in out.shape:
        raise DomainError(f"{what} has an empty axis: shape {out.shape}")
    out = out.copy()
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class ChannelSpec:
    """The memoryless channel: state law p(w) and transition law p(y1,y2|x,w)."""

    state_law: np.ndarray   # [w]
    channel_law: np.ndarray  # [x][w][y1][y2]

    def __post_init__(self):
        state = _as_law(self.state_law, 1, "state_law")
        chan = _as_law(self.channel_law, 4, "channel_law")
        if chan.shape[1] != state.shape[0]:
            raise DomainError(
                f"channel_law has {chan.shape[1]} states but state_law has {state.shape[0]}"
            )
        object.__setattr__(self, "state_law", state)
        object.__setattr__(self, "channel_law", chan)

    @property
    def w_card(self) -> int:
        return self.state_law.shape[0]

    @property
    def x_card(self) -> int:
        return self.channel_law.shape[0]

    @property
    def y1_card(self) -> int:
        return self.channel_law.shape[2]

    @property
    def y2_card(self) -> int:
        return self.channel_law.shape[3]


@dataclass(frozen=True)
class CodingScheme:
    """The auxiliary layer selecting one joint: p(u), p(v1,v2|w,u), p(x|w,v1,v2)."""

    u_law: np.ndarray      # [u]
    aux_law: np.ndarray    # [w][u][v1][v2]
    input_law: np.ndarray  # [w][v1][v2][x]

    def __post_init__(self):
        u = _as_law(self.u_law, 1, "u_law")
        aux = _as_law(self.aux_law, 4, "aux_law")
        inp = _as_law(self.input_law, 4, "input_law")
        if aux.shape[1] != u.shape[0]:
            raise DomainError(
                f"aux_law has {aux.shape[1]} u-slices but u_law has {u.shape[0]}"
            )
        if inp.shape[0] != aux.shape[0]:
            raise DomainError(
                f"input_law has {inp.shape[0]} states but aux_law has {aux.shape[0]}"
            )
        if inp.shape[1] != aux.shape[2] or inp.shape[2] != aux.shape[3]:
            raise DomainError(
                f"input_law auxiliary axes {inp.shape[1:3]} do not match "
                f"aux_law {aux.shape[2:]}"
            )
        object.__setattr__(self, "u_law", u)
        object.__setattr__(self, "aux_law", aux)
        object.__setattr__(self, "input_law", inp)

    @property
    def u_card(self) -> int:
        return self.u_law.shape[0]

    @property
    def v1_card(self) -> int:
        return self.aux_law.shape[2]

    @property
    def v2_card(self) -> int:
        return self.aux_law.shape[3]

    @property
    def x_card(self) -> int:
        return self.input_law.shape[3]

    @property
    def w_card(self) -> int:
        return self.aux_law.shape[0]


# -- validation ----------------------------------------------------------------


def _check_distribution(vec: np.ndarray, label: str, out: list[str]) -> None:
    neg = np.argwhere(vec < 0.0)
    for idx in neg:
        where = ",".join(str(int(i)) for i in idx)
        out.append(f"{label}[{where}] = {vec[tuple(idx)]!r} is negative")
    total = float(vec.sum())
    if abs(total - 1.0) > LAW_TOL:
        out.append(f"{label} sums to {total!r}, expected 1 within {LAW_TOL}")


def validate_channel(spec: ChannelSpec) -> list[str]:
    """Return every normalization violation in the channel, with coordinates."""
    out: list[str] = []
    _check_distribution(spec.state_law, "state_law", out)
    for x in range(spec.x_card):
        for w in range(spec.w_card):
            _check_distribution(
                spec.channel_law[x, w], f"channel_law[x={x},w={w}]", out
            )
    return out


def validate_scheme(spec: ChannelSpec, scheme: CodingScheme) -> list[str]:
    """Return normalization and compatibility violations of a scheme."""
    out: list[str] = []
    if scheme.w_card != spec.w_card:
        out.append(
            f"scheme is built for {scheme.w_card} states but the channel has {spec.w_card}"
        )
    if scheme.x_card != spec.x_card:
        out.append(
            f"scheme emits {scheme.x_card} input symbols but the channel expects {spec.x_card}"
        )
    _check_distribution(scheme.u_law, "u_law", out)
    for w in range(scheme.w_card):
        for u in range(scheme.u_card):
            _check_distribution(scheme.aux_law[w, u], f"aux_law[w={w},u={u}]", out)
    for w in range(scheme.w_card):
        for a in range(scheme.v1_card):
            for b in range(scheme.v2_card):
                _check_distribution(
                    scheme.input_law[w, a, b], f"input_law[w={w},v1={a},v2={b}]", out
                )
    return out


def require_valid(spec: ChannelSpec, scheme: CodingScheme) -> None:
    violations = validate_channel(spec) + validate_scheme(spec, scheme)
    if violations:
        raise DomainError("invalid channel/scheme: " + "; ".join(violations))


# -- the induced joint -----------------------------------------------------------


def induced_joint(spec: ChannelSpec, scheme: CodingScheme) -> JointDistribution:
    """The seven-variable joint over (W,U,V1,V2,X,Y1,Y2) induced by the factorization."""
    require_valid(spec, scheme)
    cards = (
        spec.w_card,
        scheme.u_card,
        scheme.v1_card,
        scheme.v2_card,
        spec.x_card,
        spec.y1_card,
        spec.y2_card,
    )
    cells = 1
    for c in cards:
        cells *= c
    if cells > MAX_CELLS:
        raise CapacityError(
            f"induced joint would hold {cells} cells, exceeding the cap of {MAX_CELLS}"
        )
    mass = np.einsum(
        "w,u,wuab,wabx,xwyz->wuabxyz",
        spec.state_law,
        scheme.u_law,
        scheme.aux_law,
        scheme.input_law,
        spec.channel_law,
    )
    variables = tuple(Variable(n, c) for n, c in zip(JOINT_NAMES, cards))
    return JointDistribution(variables, mass)


def aux_conditionals(spec: ChannelSpec, scheme: CodingScheme) -> tuple[np.ndarray, np.ndarray]:
    """Per-user codeword laws p(v1|u) and p(v2|u), state averaged out."""
    pv1 = np.einsum("w,wuab->ua", spec.state_law, scheme.aux_law)
    pv2 = np.einsum("w,wuab->ub", spec.state_law, scheme.aux_law)
    return pv1, pv2


# -- file format -----------------------------------------------------------------


def _expect(obj: dict, key: str, where: str):
    if key not in obj:
        raise ParseError(f"missing field {key!r} in {where}")
    return obj[key]


def _shaped(arr, shape: tuple[int, ...], field: str) -> np.ndarray:
    try:
        out = np.asarray(arr, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"field {field!r} is not a numeric array: {exc}") from exc
    if out.shape != shape:
        raise ParseError(f"field {field!r} has shape {out.shape}, expected {shape}")
    return out


def loads_spec(text: str) -> tuple[ChannelSpec, CodingScheme | None]:
    """Parse a channel/scheme document; structural problems raise ParseError."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("document root must be a JSON object")
    alphabets = _expect(doc, "alphabets", "document")
    if not isinstance(alphabets, dict):
        raise ParseError("field 'alphabets' must be an object")
    cards = {}
    for name in ("W", "X", "Y1", "Y2"):
        value = _expect(alphabets, name, "'alphabets'")
        if not isinstance(value, int) or value < 1:
            raise ParseError(f"alphabets.{name} must be a positive integer, got {value!r}")
        cards[name] = value
    state = _shaped(_expect(doc, "state_law", "document"), (cards["W"],), "state_law")
    chan = _shaped(
        _expect(doc, "channel_law", "document"),
        (cards["X"], cards["W"], cards["Y1"], cards["Y2"]),
        "channel_law",
    )
    spec = ChannelSpec(state, chan)

    scheme = None
    if "scheme" in doc:
        block = doc["scheme"]
        if not isinstance(block, dict):
            raise ParseError("field 'scheme' must be an object")
        u_law = _expect(block, "u_law", "'scheme'")
        try:
            u_arr = np.asarray(u_law, dtype=float)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"field 'scheme.u_law' is not a numeric array: {exc}") from exc
        if u_arr.ndim != 1 or u_arr.shape[0] < 1:
            raise ParseError(f"field 'scheme.u_law' must be a flat array, got shape {u_arr.shape}")
        aux_raw = _expect(block, "aux_law", "'scheme'")
        try:
            aux_arr = np.asarray(aux_raw, dtype=float)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"field 'scheme.aux_law' is not a numeric array: {exc}") from exc
        if aux_arr.ndim != 4:
            raise ParseError(
                f"field 'scheme.aux_law' must be indexed [w][u][v1][v2], got shape {aux_arr.shape}"
            )
        inp_arr = _shaped(
            _expect(block, "input_law", "'scheme'"),
            (cards["W"], aux_arr.shape[2], aux_arr.shape[3], cards["X"]),
            "scheme.input_law",
        )
        aux_arr = _shaped(aux_raw, (cards["W"], u_arr.shape[0], aux_arr.shape[2], aux_arr.shape[3]), "scheme.aux_law")
        # Scheme alphabets may be declared redundantly; cross-check when present.
        for name, got in (("U", u_arr.shape[0]), ("V1", aux_arr.shape[2]), ("V2", aux_arr.shape[3])):
            if name in alphabets and alphabets[name] != got:
                raise ParseError(
                    f"alphabets.{name} = {alphabets[name]} contradicts scheme arrays ({got})"
                )
        try:
            scheme = CodingScheme(u_arr, aux_arr, inp_arr)
        except DomainError as exc:
            raise ParseError(f"inconsistent scheme block: {exc}") from exc
    return spec, scheme


def load_spec(path: str | Path) -> tuple[ChannelSpec, CodingScheme | None]:
    """Load a channel/scheme JSON document from disk."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads_spec(text)


def dumps_spec(spec: ChannelSpec, scheme: CodingScheme | None = None) -> str:
    """Serialize to the JSON document format (inverse of :func:`loads_spec`)."""
    doc: dict = {
        "alphabets": {
            "W": spec.w_card,
            "X": spec.x_card,
            "Y1": spec.y1_card,
            "Y2": spec.y2_card,
        },
        "state_law": spec.state_law.tolist(),
        "channel_law": spec.channel_law.tolist(),
    }
    if scheme is not None:
        doc["alphabets"].update(
            {"U": scheme.u_card, "V1": scheme.v1_card, "V2": scheme.v2_card}
        )
        doc["scheme"] = {
            "u_law": scheme.u_law.tolist(),
            "aux_law": scheme.aux_law.tolist(),
            "input_law": scheme.input_law.tolist(),
        }
    return json.dumps(doc, indent=2, sort_keys=True)


def save_spec(path: str | Path, spec: ChannelSpec, scheme: CodingScheme | None = None) -> None:
    Path(path).write_text(dumps_spec(spec, scheme) + "\n", encoding="utf-8")
