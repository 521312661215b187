import json
import logging
from pathlib import Path
from typing import Dict, Optional, Tuple

import redis
from pydantic import ValidationError

from arith import gcd, is_prime, kronecker
from config import settings
from exceptions import DataError, UsageError
from schemas import GeneratorCacheDocument, GeneratorCacheEntry

logger = logging.getLogger(__name__)


def is_valid_generator(D: int, p: int, a: int, b: int) -> bool:
    """
    Check that a cached (a, b) really is zeta_p for this D.

    Args:
        D: Coefficient of the conic
        p: Claimed split prime
        a, b: Cached coordinates of zeta_p = (a + b*sqrt(-D))/p

    Returns:
        True only for a genuine generator; p past the exact primality range is never trusted
    """
    if D < 1 or p <= 2 or a <= 0 or b <= 0:
        return False
    if D == 1 and a > b:
        return False
    if gcd(a, b) != 1 or a * a + D * b * b != p * p:
        return False
    try:
        return is_prime(p) and kronecker(-D, p) == 1
    except UsageError:
        # p beyond the exact primality range
        return False


class GeneratorCache:
    """Advisory store of generators keyed by (D, p). Backends override the three hooks."""

    def get(self, D: int, p: int) -> Optional[Tuple[int, int]]:
        raise NotImplementedError

    def put(self, D: int, p: int, a: int, b: int) -> None:
        raise NotImplementedError

    def flush(self) -> None:
        """Persist anything written since the last flush."""


class JsonFileCache(GeneratorCache):
    """Generator cache backed by a JSON document `{"entries": [{"D", "p", "a", "b"}, ...]}`."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self.entries: Dict[Tuple[int, int], Tuple[int, int]] = {}
        self.dirty = False
        self.load()

    def load(self):
        """Read and revalidate the document. Raises DataError if it cannot be parsed."""
        if not self.path.exists():
            logger.info(f"Generator cache {self.path} does not exist yet; starting empty")
            return

        try:
            document = GeneratorCacheDocument.model_validate_json(self.path.read_text(encoding="utf-8"))
        except (ValidationError, OSError) as e:
            raise DataError(f"invalid generator cache document {self.path}: {e}")

        dropped = 0
        for entry in document.entries:
            if is_valid_generator(entry.D, entry.p, entry.a, entry.b):
                self.entries[(entry.D, entry.p)] = (entry.a, entry.b)
            else:
                dropped += 1
                logger.warning(f"Dropping invalid cached generator D={entry.D}, p={entry.p}: ({entry.a}, {entry.b})")
        if dropped:
            self.dirty = True
        logger.info(f"Loaded {len(self.entries)} generators from {self.path}")

    def get(self, D: int, p: int) -> Optional[Tuple[int, int]]:
        """
        Look up zeta_p in the loaded document.

        Args:
            D: Coefficient of the conic
            p: Split prime

        Returns:
            Cached (a, b) or None if not present
        """
        hit = self.entries.get((D, p))
        if hit:
            logger.info(f"Cache HIT for zeta_{p} (D={D})")
        else:
            logger.info(f"Cache MISS for zeta_{p} (D={D})")
        return hit

    def put(self, D: int, p: int, a: int, b: int) -> None:
        if self.entries.get((D, p)) != (a, b):
            self.entries[(D, p)] = (a, b)
            self.dirty = True

    def flush(self) -> None:
        """Write the document back if it changed. A failed write is logged and the entries stay dirty."""
        if not self.dirty:
            return
        document = GeneratorCacheDocument(
            entries=[GeneratorCacheEntry(D=D, p=p, a=a, b=b) for (D, p), (a, b) in sorted(self.entries.items())]
        )
        try:
            self.path.write_text(document.model_dump_json(indent=2) + "\n", encoding="utf-8")
        except OSError as e:
            logger.warning(f"Could not write generator cache {self.path} ({e}); results are unaffected")
            return
        self.dirty = False
        logger.info(f"Wrote {len(self.entries)} generators to {self.path}")


class RedisGeneratorCache(GeneratorCache):
    """Redis-backed generator cache, shared between processes. Unreachable Redis means no cache."""

    def __init__(self, url: str):
        self.url = url
        self.redis_client: Optional[redis.Redis] = None
        self.connect()

    def connect(self):
        """Establish connection to Redis server."""
        try:
            self.redis_client = redis.Redis.from_url(
                self.url,
                decode_responses=True,
                socket_connect_timeout=5,
                socket_timeout=5,
            )
            self.redis_client.ping()
            logger.info(f"Connected to Redis generator cache at {self.url}")
        except Exception as e:
            logger.warning(f"Redis generator cache unavailable ({e}); continuing without cache")
            self.redis_client = None

    def _get_cache_key(self, D: int, p: int) -> str:
        return f"{settings.CACHE_KEY_PREFIX}:{D}:{p}"

    def get(self, D: int, p: int) -> Optional[Tuple[int, int]]:
        """
        Get zeta_p from Redis.

        Values failing revalidation are invalidated.

        Args:
            D: Coefficient of the conic
            p: Split prime

        Returns:
            Cached (a, b) or None if not found or Redis unavailable
        """
        if not self.redis_client:
            return None

        key = self._get_cache_key(D, p)
        try:
            cached = self.redis_client.get(key)
            if not cached:
                logger.info(f"Cache MISS for zeta_{p} (D={D})")
                return None
            data = json.loads(cached)
            a, b = int(data["a"]), int(data["b"])
        except Exception as e:
            logger.error(f"Error reading cached generator {key}: {e}")
            return None

        if not is_valid_generator(D, p, a, b):
            logger.warning(f"Dropping invalid cached generator {key}: ({a}, {b})")
            self.invalidate(D, p)
            return None
        logger.info(f"Cache HIT for zeta_{p} (D={D})")
        return a, b

    def put(self, D: int, p: int, a: int, b: int) -> None:
        """
        Store zeta_p in Redis with TTL.

        Args:
            D: Coefficient of the conic
            p: Split prime
            a, b: Coordinates of zeta_p
        """
        if not self.redis_client:
            return
        try:
            self.redis_client.setex(
                self._get_cache_key(D, p),
                settings.CACHE_TTL_SECONDS,
                json.dumps({"a": a, "b": b}),
            )
        except Exception as e:
            logger.error(f"Error caching zeta_{p} (D={D}): {e}")

    def invalidate(self, D: int, p: int) -> None:
        """Remove zeta_p from Redis."""
        if not self.redis_client:
            return
        try:
            self.redis_client.delete(self._get_cache_key(D, p))
        except Exception as e:
            logger.error(f"Error invalidating zeta_{p} (D={D}): {e}")


def open_cache(location: Optional[str]) -> Optional[GeneratorCache]:
    """`redis://...` selects Redis; any other value is a JSON file path."""
    if not location:
        return None
    if location.startswith(("redis://", "rediss://", "unix://")):
        return RedisGeneratorCache(location)
    return JsonFileCache(Path(location))
