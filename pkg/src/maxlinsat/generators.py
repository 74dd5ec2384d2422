"""Seeded instance families.

All generators are pure functions of a :class:`GenConfig`. Row ``i`` draws
from its own stream ``(seed, <family label>, i)`` (see :mod:`maxlinsat.rng`),
so output is identical no matter how rows are scheduled.

Families:

``random``
    Uniform coefficients and uniform r-subsets. A row whose coefficients all
    came out zero is redrawn from the same stream, since a constant linear
    form does not constrain ``x``.
``e3lin``
    Three unit coefficients per row at distinct positions (index triples are
    drawn with replacement across rows, so rows may repeat).
``opi``
    Vandermonde rows ``y_i^0 .. y_i^(n-1)`` at the points ``0 .. m-1``,
    shuffled by the seed.
``planted``
    A ``random`` instance edited so a hidden assignment satisfies at least
    ``ceil(planted_fraction * m)`` constraints.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError
from .gf import from_order
from .instance import Instance
from .rng import stream

KINDS = ("random", "e3lin", "opi", "planted")


@dataclass(frozen=True)
class GenConfig:
    q: int
    n: int
    m: int
    r: int = 1
    seed: int = 0
    kind: str = "random"
    planted_fraction: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "planted_fraction", Fraction(self.planted_fraction))
        if self.kind not in KINDS:
            raise ConfigError(f"unknown kind {self.kind!r}; choose from {', '.join(KINDS)}")
        if self.n < 1 or self.m < 1:
            raise ConfigError("n and m must be positive")
        if not 1 <= self.r <= self.q - 1:
            raise ConfigError(f"r must lie in [1, q-1] = [1, {self.q - 1}], got {self.r}")
        if self.kind == "e3lin" and self.n < 3:
            raise ConfigError("e3lin needs n >= 3")
        if self.kind == "opi":
            if self.m > self.q:
                raise ConfigError(f"opi needs m <= q distinct points, got m={self.m} > q={self.q}")
            if self.n > self.m:
                raise ConfigError("opi needs n <= m")
        if not 0 < self.planted_fraction <= 1:
            raise ConfigError("planted_fraction must lie in (0, 1]")

    @classmethod
    def from_manifest(cls, text, **overrides):
        """Build a config from ``key = value`` lines (keys are the field names)."""
        values = parse_key_values(text)
        values.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return cls(
                q=int(values["q"]),
                n=int(values["n"]),
                m=int(values["m"]),
                r=int(values.get("r", 1)),
                seed=int(values.get("seed", 0)),
                kind=str(values.get("kind", "random")),
                planted_fraction=Fraction(str(values.get("planted_fraction", 1))),
            )
        except KeyError as exc:
            raise ConfigError(f"manifest is missing key {exc.args[0]!r}") from None
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"bad manifest value: {exc}") from None


def parse_key_values(text):
    """Parse the manifest grammar: ``key = value`` per line, ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"manifest line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ConfigError(f"manifest line {lineno}: empty key")
        out[key.replace("-", "_")] = value
    return out


def _random_subset(rng, q, r):
    return tuple(sorted(int(v) for v in rng.choice(q, size=r, replace=False)))


def _random_rows(cfg):
    rows, accept = [], []
    for i in range(cfg.m):
        rng = stream(cfg.seed, "random", i)
        row = rng.integers(0, cfg.q, size=cfg.n)
        while not row.any():
            row = rng.integers(0, cfg.q, size=cfg.n)
        rows.append(tuple(int(c) for c in row))
        accept.append(_random_subset(rng, cfg.q, cfg.r))
    return rows, accept


def random_instance(cfg):
    rows, accept = _random_rows(cfg)
    return Instance(from_order(cfg.q), rows, accept)


def e3lin(cfg):
    if cfg.n < 3:
        raise ConfigError("e3lin needs n >= 3")
    rows, accept = [], []
    for i in range(cfg.m):
        rng = stream(cfg.seed, "e3lin", i)
        row = [0] * cfg.n
        for j in rng.choice(cfg.n, size=3, replace=False):
            row[int(j)] = 1
        rows.append(row)
        accept.append(_random_subset(rng, cfg.q, cfg.r))
    return Instance(from_order(cfg.q), rows, accept)


def opi_points(cfg):
    """Evaluation points: elements 0..m-1 in a seed-keyed order."""
    if cfg.m > cfg.q:
        raise ConfigError(f"opi needs m <= q distinct points, got m={cfg.m} > q={cfg.q}")
    return [int(v) for v in stream(cfg.seed, "opi-points").permutation(cfg.m)]


def opi(cfg):
    F = from_order(cfg.q)
    rows, accept = [], []
    for i, y in enumerate(opi_points(cfg)):
        rows.append([F.pow(y, j) for j in range(cfg.n)])
        accept.append(_random_subset(stream(cfg.seed, "opi", i), cfg.q, cfg.r))
    return Instance(F, rows, accept)


def planted(cfg):
    """Return ``(instance, x_star)`` where ``x_star`` satisfies at least the planted share."""
    F = from_order(cfg.q)
    x_star = tuple(int(v) for v in stream(cfg.seed, "planted-x").integers(0, cfg.q, size=cfg.n))
    rows, accept = _random_rows(cfg)
    k = math.ceil(cfg.planted_fraction * cfg.m)
    chosen = stream(cfg.seed, "planted-pick").permutation(cfg.m)[:k]
    for i in sorted(int(i) for i in chosen):
        value = F.dot(rows[i], x_star)
        if value in accept[i]:
            continue
        # sets are full at size r: swap out a random element for the target
        fs = list(accept[i])
        fs[int(stream(cfg.seed, "planted-fix", i).integers(len(fs)))] = value
        accept[i] = tuple(sorted(fs))
    return Instance(F, rows, accept), x_star


def generate(cfg):
    """Dispatch on ``cfg.kind``. Returns ``(instance, x_star_or_None)``."""
    if cfg.kind == "planted":
        return planted(cfg)
    builder = {"random": random_instance, "e3lin": e3lin, "opi": opi}[cfg.kind]
    return builder(cfg), None
