"""Fault injection hooks for exercising the verify command's failure path.

Activating a named fault makes the corresponding computation deliberately
wrong so that the invariant checker can prove it notices.  Never active
unless explicitly switched on.
"""

from contextlib import contextmanager

KNOWN_FAULTS = frozenset({"fermi-sign"})

_active: set = set()


def activate(name: str):
    if name not in KNOWN_FAULTS:
        raise ValueError(f"unknown fault {name!r}; known: {sorted(KNOWN_FAULTS)}")
    _active.add(name)


def clear():
    _active.clear()


def active(name: str) -> bool:
    return name in _active


@contextmanager
def injected(name: str):
    activate(name)
    try:
        yield
    finally:
        _active.discard(name)
