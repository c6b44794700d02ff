"""
Function registry for the benchmark suite.
Discovers TestFunction subclasses under core/functions and resolves names.
"""

import importlib
import inspect
import logging
import os
import pkgutil
from typing import Dict, List, Optional, Tuple, Type

import numpy as np

from core.errors import UnknownFunction
from core.functions.base_function import TestFunction, normalize_name

logger = logging.getLogger(__name__)

FUNCTIONS_PACKAGE = "core.functions"
FUNCTIONS_DIR = os.path.join(os.path.dirname(__file__), "functions")

# the published ordering of the 20-problem suite
SUITE_ORDER = (
    "bohachevsky_1",
    "bohachevsky_2",
    "cosine_mixture",
    "easom",
    "epistatic_michalewicz",
    "exponential",
    "griewank",
    "levy_montalvo_1",
    "levy_montalvo_2",
    "modified_langerman",
    "neumaier_2",
    "neumaier_3",
    "price_transistor",
    "rastrigin",
    "schaffer_1",
    "schaffer_2",
    "shekel_foxholes",
    "shubert",
    "sinusoidal",
    "storn_tchebychev",
)


class FunctionRegistry:
    """Maps function keys to TestFunction classes."""

    def __init__(self, package: str = FUNCTIONS_PACKAGE, directory: str = FUNCTIONS_DIR):
        """
        Initialize the registry.

        Args:
            package: Dotted package that holds the function modules
            directory: Filesystem location of that package
        """
        self.package = package
        self.directory = directory
        self.classes: Dict[str, Type[TestFunction]] = {}
        self._load_functions()

    def _load_functions(self) -> None:
        """Import every module of the package and collect its functions."""
        for _, name, _ in pkgutil.iter_modules([self.directory]):
            if name == "base_function":
                continue
            self._load_module(f"{self.package}.{name}")
        logger.debug(f"Registered {len(self.classes)} benchmark functions")

    def _load_module(self, module_path: str) -> int:
        """
        Register the TestFunction subclasses defined in one module.

        Args:
            module_path: Dotted module path (e.g. 'core.functions.classic')

        Returns:
            Number of classes registered from the module
        """
        module = importlib.import_module(module_path)
        found = 0
        for _, obj in inspect.getmembers(module, inspect.isclass):
            if (issubclass(obj, TestFunction) and obj is not TestFunction
                    and not inspect.isabstract(obj) and obj.__module__ == module.__name__):
                if obj.key in self.classes:
                    logger.warning(f"Function '{obj.key}' registered twice; keeping {obj.__name__}")
                self.classes[obj.key] = obj
                found += 1
        if not found:
            logger.warning(f"No TestFunction class found in module: {module_path}")
        return found

    def resolve(self, name: str) -> Type[TestFunction]:
        """
        Find the class for a key, display name or alias.

        Raises:
            UnknownFunction: if nothing matches
        """
        wanted = normalize_name(name)
        if wanted in self.classes:
            return self.classes[wanted]
        for cls in self.classes.values():
            if wanted in (normalize_name(cls.display_name), *cls.aliases):
                return cls
        raise UnknownFunction(name)

    def create(self, name: str, dim: Optional[int] = None) -> TestFunction:
        return self.resolve(name)(dim)

    def suite(self) -> List[TestFunction]:
        """The 20 suite functions at their default dimensions, in published order."""
        missing = [key for key in SUITE_ORDER if key not in self.classes]
        if missing:
            raise UnknownFunction(missing[0])
        return [self.classes[key]() for key in SUITE_ORDER]


_registry: Optional[FunctionRegistry] = None


def registry() -> FunctionRegistry:
    """The process-wide registry, built on first use."""
    global _registry
    if _registry is None:
        _registry = FunctionRegistry()
    return _registry


def make_suite() -> List[TestFunction]:
    return registry().suite()


def get_function(name: str, dim: Optional[int] = None) -> TestFunction:
    """
    Instantiate a benchmark function by name.

    Args:
        name: Key, display name or alias, case and punctuation insensitive
        dim: Optional dimension for scalable functions

    Raises:
        UnknownFunction: if the name is not registered
    """
    return registry().create(name, dim)


def default_box(name: str) -> Tuple[np.ndarray, np.ndarray]:
    """The literature search domain of a suite function."""
    return get_function(name).bounds()


def describe_suite() -> List[Dict[str, object]]:
    """Rows for the list-functions command."""
    rows = []
    for fn in make_suite():
        lower, upper = fn.bounds()
        rows.append({
            "key": fn.key,
            "name": fn.display_name,
            "dim": fn.dim,
            "lower": float(lower.min()),
            "upper": float(upper.max()),
            "known_best": fn.known_best,
        })
    return rows
