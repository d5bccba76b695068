"""On-disk cache of characteristic series, one JSON file per (weight, N, d2)."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
import warnings
from pathlib import Path

from .basis import WeightCharacter
from .exactfield import CyclotomicRational
from .newton import CharSeries, char_series
from .upmatrix import GeneratorConstants, build_truncation

__all__ = ["ENV_VAR", "CharSeriesCache", "default_cache_dir", "cached_char_series"]

ENV_VAR = "SLOPEFORGE_CACHE"


def default_cache_dir() -> Path | None:
    value = os.environ.get(ENV_VAR)
    return Path(value) if value else None


def _digest(items) -> str:
    return hashlib.sha256("\n".join(items).encode()).hexdigest()


class CharSeriesCache:
    def __init__(self, directory):
        self.directory = Path(directory)

    def path(self, wc: WeightCharacter, N: int, d2) -> Path:
        d2 = CyclotomicRational.coerce(d2)
        slug = str(d2).replace("/", "_").replace("*", "").replace("+", "p")
        return self.directory / f"w{wc.n1}_{wc.n2}_N{N}_d2_{slug}.json"

    def load(self, wc: WeightCharacter, N: int, d2) -> CharSeries | None:
        path = self.path(wc, N, d2)
        if not path.exists():
            return None
        try:
            data = json.loads(path.read_text())
            coeffs = data["coeffs"]
            if data["sha256"] != _digest(coeffs) or len(coeffs) != N + 1:
                raise ValueError("checksum or length mismatch")
            if data["weight"] != [wc.n1, wc.n2] or data["d2"] != str(CyclotomicRational.coerce(d2)):
                raise ValueError("key mismatch")
            return CharSeries.from_strings(coeffs)
        except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
            warnings.warn(f"discarding corrupt cache entry {path}: {exc}", stacklevel=2)
            path.unlink(missing_ok=True)
            return None

    def store(self, wc: WeightCharacter, N: int, d2, cs: CharSeries) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path(wc, N, d2)
        coeffs = cs.to_strings()
        payload = {
            "weight": [wc.n1, wc.n2],
            "size": N,
            "d2": str(CyclotomicRational.coerce(d2)),
            "coeffs": coeffs,
            "sha256": _digest(coeffs),
        }
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(payload, fh)
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        return path


def cached_char_series(wc: WeightCharacter, N: int, gc: GeneratorConstants | None = None,
                       cache_dir=None) -> CharSeries:
    """char_series of the size-N truncation, read through the cache if one is set."""
    gc = gc or GeneratorConstants()
    directory = cache_dir if cache_dir is not None else default_cache_dir()
    if directory is None:
        return char_series(build_truncation(wc, N, gc))
    cache = CharSeriesCache(directory)
    cs = cache.load(wc, N, gc.d2)
    if cs is None:
        cs = char_series(build_truncation(wc, N, gc))
        cache.store(wc, N, gc.d2, cs)
    return cs
