"""
Generator registry for synthetic graph families.

The registry allows dynamic registration and retrieval of generators
by family name, so benchmark configs and CLI flags can name workloads
as plain strings.
"""

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable

if TYPE_CHECKING:
    from coreprobe.graph.csr import Graph

logger = logging.getLogger(__name__)

GeneratorFunc = Callable[..., "Graph"]


@dataclass(frozen=True)
class GeneratorEntry:
    """A registered generator family."""
    family: str
    func: GeneratorFunc
    arity: int
    description: str = ""


class GeneratorRegistry:
    """Registry of graph generator families."""

    _instance: "GeneratorRegistry | None" = None

    def __init__(self):
        self._generators: dict[str, GeneratorEntry] = {}

    @classmethod
    def get_instance(cls) -> "GeneratorRegistry":
        """Get the singleton registry instance."""
        if cls._instance is None:
            cls._instance = GeneratorRegistry()
        return cls._instance

    def register(self, family: str, func: GeneratorFunc, arity: int, description: str = "") -> None:
        """Register a generator under a family name.

        Args:
            family: Name used in spec strings, e.g. ``er``.
            func: Generator taking ``arity`` positional numbers and a ``seed`` keyword.
            arity: Number of positional arguments in the spec string.
            description: Usage line shown in CLI help.
        """
        if family in self._generators:
            logger.warning(
                f"Overwriting generator for family {family}: "
                f"{self._generators[family].func.__name__} -> {func.__name__}"
            )
        self._generators[family] = GeneratorEntry(family, func, arity, description)
        logger.debug(f"Registered generator: {func.__name__} for family {family}")

    def get(self, family: str) -> GeneratorEntry | None:
        return self._generators.get(family)

    def families(self) -> list[str]:
        return sorted(self._generators)

    def describe(self) -> list[str]:
        """Usage lines of all registered families."""
        return [self._generators[f].description for f in self.families()]

    def unregister(self, family: str) -> None:
        if family in self._generators:
            del self._generators[family]
            logger.debug(f"Unregistered generator for family {family}")


def register_generator(family: str, arity: int, description: str = "") -> Callable[[GeneratorFunc], GeneratorFunc]:
    """Decorator to register a generator function.

    Usage:
        @register_generator("er", arity=2)
        def gen_erdos_renyi(n, avg_degree, seed=0):
            ...
    """
    def decorator(func: GeneratorFunc) -> GeneratorFunc:
        GeneratorRegistry.get_instance().register(family, func, arity, description)
        return func
    return decorator
