"""JSON grid configuration for scans and verification runs.

Example::

    {
      "primes": [11, 13],            # or {"range": [3, 50]}
      "generators": "primitive-roots",  # or "all", or [2, 3]
      "a_values": [1, 2],
      "tuples": [{"N": 5, "H": 9, "L": 0}],   # or [M, N, H, L, K_off]
      "weight_kind": "unit",          # or "random", or both as a list
      "seeds": [0],
      "checks": ["chain", "holder"],
      "output": {"path": "scan.csv", "format": "csv"}
    }

Tuple entries may be integers or the symbolic forms ``"T"``, ``"T-k"``,
``"T/k"`` (floor), ``"p"``; ``M`` omitted or null means ``I = Z_p``.
"""
from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from .expsum import IntervalSpec, SumInstance, WeightSequence
from .modular import PrimeContext, is_prime, primitive_roots

log = logging.getLogger(__name__)

CHECKS = ("chain", "holder", "moment", "blocks", "energy")
FORMATS = ("csv", "json")
WEIGHT_KINDS = ("unit", "random")
_TUPLE_KEYS = ("M", "N", "H", "L", "K_off")
_SYMBOLIC = re.compile(r"^\s*([pT])\s*(?:([-/+])\s*(\d+))?\s*$")


class ConfigError(ValueError):
    pass


def _resolve(value, p: int, T: int) -> int:
    if isinstance(value, bool):
        raise ConfigError(f"bad tuple entry {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        m = _SYMBOLIC.match(value)
        if m:
            base = p if m.group(1) == "p" else T
            op, k = m.group(2), m.group(3)
            if op is None:
                return base
            k = int(k)
            if op == "-":
                return base - k
            if op == "+":
                return base + k
            if k == 0:
                raise ConfigError("division by zero in tuple entry")
            return base // k
    raise ConfigError(f"bad tuple entry {value!r}")


@dataclass(frozen=True)
class TupleSpec:
    M: object
    N: object
    H: object
    L: object = 0
    K_off: object = 0

    @classmethod
    def parse(cls, raw) -> TupleSpec:
        if isinstance(raw, dict):
            unknown = set(raw) - set(_TUPLE_KEYS)
            if unknown:
                raise ConfigError(f"unknown tuple keys {sorted(unknown)}")
            if "N" not in raw or "H" not in raw:
                raise ConfigError("tuple needs N and H")
            t = cls(raw.get("M"), raw["N"], raw["H"], raw.get("L", 0), raw.get("K_off", 0))
        elif isinstance(raw, (list, tuple)) and 3 <= len(raw) <= 5:
            t = cls(*raw)
        else:
            raise ConfigError(f"bad tuple {raw!r}")
        for name in _TUPLE_KEYS:
            v = getattr(t, name)
            if v is None and name == "M":
                continue
            if not isinstance(v, (int, str)) or isinstance(v, bool):
                raise ConfigError(f"bad tuple entry {name}={v!r}")
            if isinstance(v, int) and name in ("M", "N", "H") and v <= 0:
                raise ConfigError(f"tuple entry {name}={v} must be positive")
        return t

    def resolve(self, p, T):
        M = None if self.M is None else _resolve(self.M, p, T)
        return (M, _resolve(self.N, p, T), _resolve(self.H, p, T),
                _resolve(self.L, p, T), _resolve(self.K_off, p, T))


@dataclass(frozen=True)
class GridPoint:
    p: int
    g: int
    a: int
    M: int | None
    N: int
    H: int
    L: int
    K_off: int
    weight_kind: str
    seed: int

    @property
    def record_seed(self) -> int:
        return self.seed if self.weight_kind == "random" else 0

    def instance(self) -> SumInstance:
        ctx = PrimeContext.create(self.p, self.g)
        if self.M is None:
            w = self._weights(ctx.p)
            return SumInstance.full(ctx, self.a, self.N, self.H, self.L, w)
        iv = IntervalSpec(self.M, self.N, self.H, self.L, self.K_off)
        return SumInstance(ctx, self.a, iv, self._weights(self.M))

    def _weights(self, length):
        if self.weight_kind == "random":
            return WeightSequence.random(length, self.seed)
        return WeightSequence.unit(length)


@dataclass
class GridConfig:
    primes: list[int]
    generators: object = "primitive-roots"
    a_values: list[int] = field(default_factory=lambda: [1])
    tuples: list[TupleSpec] = field(default_factory=list)
    weight_kinds: list[str] = field(default_factory=lambda: ["unit"])
    seeds: list[int] = field(default_factory=lambda: [0])
    checks: list[str] = field(default_factory=lambda: list(CHECKS))
    K_max: int = 30
    output_path: str | None = None
    output_format: str = "csv"
    jobs: int = 1

    @classmethod
    def from_dict(cls, raw) -> GridConfig:
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        known = {"primes", "generators", "a_values", "tuples", "weight_kind", "seeds",
                 "checks", "K_max", "output", "jobs"}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        if "primes" not in raw:
            raise ConfigError("config needs 'primes'")
        primes = _parse_primes(raw["primes"])

        gens = raw.get("generators", "primitive-roots")
        if isinstance(gens, list):
            if not all(_is_int(g) for g in gens):
                raise ConfigError("generators must be integers")
        elif gens not in ("all", "primitive-roots"):
            raise ConfigError(f"bad generators {gens!r}")

        a_values = raw.get("a_values", [1])
        if not isinstance(a_values, list) or not all(_is_int(a) for a in a_values):
            raise ConfigError("a_values must be a list of integers")

        tuples = raw.get("tuples", [])
        if not isinstance(tuples, list):
            raise ConfigError("tuples must be a list")
        tuples = [TupleSpec.parse(t) for t in tuples]

        kinds = raw.get("weight_kind", "unit")
        kinds = [kinds] if isinstance(kinds, str) else kinds
        if not isinstance(kinds, list) or not kinds or any(k not in WEIGHT_KINDS for k in kinds):
            raise ConfigError(f"weight_kind must be one of {WEIGHT_KINDS}")

        seeds = raw.get("seeds", [0])
        if not isinstance(seeds, list) or not seeds or not all(_is_int(s) and s >= 0 for s in seeds):
            raise ConfigError("seeds must be a nonempty list of nonnegative integers")

        checks = raw.get("checks", list(CHECKS))
        if not isinstance(checks, list) or any(c not in CHECKS for c in checks):
            raise ConfigError(f"checks must be a subset of {CHECKS}")

        K_max = raw.get("K_max", 30)
        if not _is_int(K_max) or K_max < 1:
            raise ConfigError("K_max must be a positive integer")
        jobs = raw.get("jobs", 1)
        if not _is_int(jobs) or jobs < 1:
            raise ConfigError("jobs must be a positive integer")

        out = raw.get("output")
        path, fmt = None, "csv"
        if isinstance(out, str):
            path = out
            fmt = "json" if out.endswith(".json") else "csv"
        elif isinstance(out, dict):
            path = out.get("path")
            fmt = out.get("format", "csv")
        elif out is not None:
            raise ConfigError("output must be a path or {path, format}")
        if fmt not in FORMATS:
            raise ConfigError(f"output format must be one of {FORMATS}")

        return cls(primes, gens, list(a_values), tuples, list(kinds), list(seeds),
                   list(checks), K_max, path, fmt, jobs)

    @classmethod
    def load(cls, path) -> GridConfig:
        try:
            raw = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_dict(raw)

    def contexts(self):
        """Every ``PrimeContext`` named by ``primes x generators``."""
        for p in self.primes:
            if self.generators == "all":
                gens = range(1, p)
            elif self.generators == "primitive-roots":
                gens = primitive_roots(p)
            else:
                gens = self.generators
            for g in gens:
                if g % p == 0:
                    log.warning("skip p=%d g=%d: g is not a unit", p, g)
                    continue
                yield PrimeContext.create(p, g)

    def points(self):
        """Valid grid points; invalid combinations are logged, never dropped silently."""
        for ctx in self.contexts():
            p, T = ctx.p, ctx.T
            for a in self.a_values:
                if a % p == 0:
                    log.warning("skip p=%d g=%d a=%d: a is not a unit", p, ctx.g, a)
                    continue
                for t in self.tuples:
                    M, N, H, L, K_off = t.resolve(p, T)
                    problem = _interval_problem(p, T, M, N, H)
                    if problem:
                        log.warning("skip p=%d g=%d a=%d M=%s N=%d H=%d L=%d: %s",
                                    p, ctx.g, a, M, N, H, L, problem)
                        continue
                    for kind in self.weight_kinds:
                        seeds = self.seeds if kind == "random" else self.seeds[:1]
                        for seed in seeds:
                            yield GridPoint(p, ctx.g, a % p, M, N, H, L, K_off, kind, seed)


def _interval_problem(p, T, M, N, H):
    if M is not None and not 0 < M <= p:
        return "need 0 < M <= p"
    if not 0 < N <= T:
        return "need 0 < N <= T"
    if not 0 < H < T:
        return "need 0 < H < T"
    return None


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def _parse_primes(spec) -> list[int]:
    if isinstance(spec, dict) and set(spec) == {"range"}:
        lo_hi = spec["range"]
        if (not isinstance(lo_hi, list) or len(lo_hi) != 2
                or not all(_is_int(v) for v in lo_hi)):
            raise ConfigError("primes.range must be [lo, hi]")
        primes = [n for n in range(max(3, lo_hi[0]), lo_hi[1] + 1) if is_prime(n)]
    elif isinstance(spec, str) and re.fullmatch(r"\d+\s*-\s*\d+", spec):
        lo, hi = (int(s) for s in spec.split("-"))
        primes = [n for n in range(max(3, lo), hi + 1) if is_prime(n)]
    elif isinstance(spec, list) and all(_is_int(v) for v in spec):
        primes = list(spec)
        bad = [n for n in primes if n < 3 or not is_prime(n) or n >= 2**31]
        if bad:
            raise ConfigError(f"not odd primes below 2**31: {bad}")
    else:
        raise ConfigError(f"bad primes spec {spec!r}")
    if not primes:
        raise ConfigError("primes must be nonempty")
    return sorted(set(primes))
