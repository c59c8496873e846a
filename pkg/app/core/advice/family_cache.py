import json
import os
from fractions import Fraction
from typing import Optional, Union

from ..config.defaults import DEFAULT_CACHE_DIR
from ...logging.logger_factory import LoggerFactory
from .covering import CoveringFamily, Direction, as_fraction, build_family_greedy


class FamilyCache:
    """
    Directory of covering families stored as JSON documents, one file per
    (n, c, direction). Families are deterministic, so a cached file is only
    a shortcut around the greedy construction.
    """

    def __init__(self, directory: Optional[str] = None):
        directory = directory or os.getenv("ADVICEBENCH_CACHE_DIR", DEFAULT_CACHE_DIR)
        self.directory = os.path.expanduser(directory)
        self.logger = LoggerFactory.get_logger(__name__, service="family-cache")

    def path_for(self, n: int, c: Fraction, direction: Direction) -> str:
        c_text = f"{c.numerator}_{c.denominator}"
        return os.path.join(self.directory, f"family_{direction.value}_n{n}_c{c_text}.json")

    def load(self, n: int, c: Union[Fraction, int, str], direction: Union[Direction, str]) -> Optional[CoveringFamily]:
        c, direction = as_fraction(c), Direction(direction)
        path = self.path_for(n, c, direction)
        if not os.path.exists(path):
            return None
        with open(path, "r") as f:
            family = CoveringFamily.from_dict(json.load(f))
        if family.n != n or family.c != c or family.direction is not direction or not family.verify():
            self.logger.warning("family_cache_rejected", path=path, message=f"Ignoring invalid cache file {path}")
            return None
        self.logger.info("family_cache_hit", path=path, size=len(family))
        return family

    def save(self, family: CoveringFamily) -> str:
        os.makedirs(self.directory, exist_ok=True)
        path = self.path_for(family.n, family.c, family.direction)
        with open(path, "w") as f:
            json.dump(family.to_dict(), f, indent=2)
        self.logger.info("family_cache_store", path=path, size=len(family))
        return path

    def get_or_build(self, n: int, c: Union[Fraction, int, str], direction: Union[Direction, str]) -> CoveringFamily:
        family = self.load(n, c, direction)
        if family is None:
            family = build_family_greedy(n, c, direction)
            self.save(family)
        return family
