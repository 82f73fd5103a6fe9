"""
Protocol NER - Merger Registry Module

Built-in merge methods are registered up front; third-party mergers are
discovered through the ``protocol_ner.mergers`` entry-point group.
"""

from typing import Dict, List, Optional, Type
import logging

try:
    from importlib.metadata import entry_points
except ImportError:
    # Python < 3.8 fallback
    from importlib_metadata import entry_points

from .base import BaseMerger, MergerInfo, MergerNotFoundError
from .majority import MajorityVoteMerger
from .sle import SleMerger

logger = logging.getLogger(__name__)

ENTRY_POINT_GROUP = "protocol_ner.mergers"

BUILTIN_MERGERS: Dict[str, Type[BaseMerger]] = {
    "majv": MajorityVoteMerger,
    "sle": SleMerger,
}


class MergerRegistry:
    """
    Registry of merge methods.

    Example:
        registry = MergerRegistry()
        sle = registry.get_merger("sle")
        merged = sle.merge_sequences([["O", "B-Action"], ["O", "O"]])
    """

    def __init__(self):
        self._mergers: Dict[str, Type[BaseMerger]] = dict(BUILTIN_MERGERS)
        self._instances: Dict[str, BaseMerger] = {}
        self._discovered: bool = False

    def discover_mergers(self) -> List[str]:
        """
        Load mergers advertised by installed packages.

        Returns:
            List[str]: Names of discovered mergers.
        """
        if self._discovered:
            return list(self._mergers)

        discovered = []
        eps = entry_points()
        if hasattr(eps, "select"):
            merger_eps = eps.select(group=ENTRY_POINT_GROUP)
        else:
            merger_eps = eps.get(ENTRY_POINT_GROUP, [])

        for ep in merger_eps:
            try:
                merger_class = ep.load()
                if not (isinstance(merger_class, type) and issubclass(merger_class, BaseMerger)):
                    logger.warning(f"Entry point {ep.name} is not a BaseMerger subclass")
                    continue
                name = ep.name.lower()
                if name in BUILTIN_MERGERS:
                    logger.warning(f"Entry point {ep.name} shadows a built-in merger, ignored")
                    continue
                self._mergers[name] = merger_class
                discovered.append(name)
                logger.info(f"Discovered merger: {name} ({ep.value})")
            except Exception as e:
                logger.error(f"Failed to load merger {ep.name}: {e}")

        self._discovered = True
        return discovered

    def register_merger(self, name: str, merger_class: Type[BaseMerger]) -> None:
        """
        Raises:
            TypeError: If merger_class is not a BaseMerger subclass.
        """
        if not issubclass(merger_class, BaseMerger):
            raise TypeError(f"{merger_class} must be a subclass of BaseMerger")
        self._mergers[name.lower()] = merger_class
        self._instances.pop(name.lower(), None)
        logger.debug(f"Registered merger: {name}")

    def get_merger(self, name: str, auto_discover: bool = True) -> BaseMerger:
        """
        Raises:
            MergerNotFoundError: If no merger of that name exists.
        """
        name = name.lower()
        if name in self._instances:
            return self._instances[name]
        if name not in self._mergers and auto_discover and not self._discovered:
            self.discover_mergers()
        if name not in self._mergers:
            raise MergerNotFoundError(
                f"Merge method '{name}' not found. Available: {sorted(self._mergers)}"
            )
        instance = self._mergers[name]()
        self._instances[name] = instance
        return instance

    def list_mergers(self) -> List[MergerInfo]:
        if not self._discovered:
            self.discover_mergers()
        return [self.get_merger(name, auto_discover=False).info for name in sorted(self._mergers)]

    def available(self) -> List[str]:
        """Sorted names of every built-in, registered and discovered merger."""
        if not self._discovered:
            self.discover_mergers()
        return sorted(self._mergers)

    def has_merger(self, name: str) -> bool:
        if name.lower() not in self._mergers and not self._discovered:
            self.discover_mergers()
        return name.lower() in self._mergers


_global_registry: Optional[MergerRegistry] = None


def get_registry() -> MergerRegistry:
    global _global_registry
    if _global_registry is None:
        _global_registry = MergerRegistry()
    return _global_registry


def get_merger(name: str) -> BaseMerger:
    """Convenience function to get a merger from the global registry."""
    return get_registry().get_merger(name)
