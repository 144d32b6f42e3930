"""Interactive evolution of urban FPS levels.

Thin wrapper over the compiled ``_ufg`` extension; JSON documents produced by
the core are returned as Python dicts and lists.
"""

import json

from . import _ufg
from ._ufg import (
    CANDIDATES,
    CANVAS_UNITS,
    CELL_UNITS,
    GENOME_LENGTH,
    GRID_SIZE,
    PREFAB_COUNT,
    UfgError,
)

__all__ = [
    "CANDIDATES",
    "CANVAS_UNITS",
    "CELL_UNITS",
    "GENOME_LENGTH",
    "GRID_SIZE",
    "PREFAB_COUNT",
    "Session",
    "UfgError",
    "ascii",
    "classify",
    "cover_score",
    "decode",
    "features",
    "playability",
    "render_svg",
    "run_experiment",
    "train_tree",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def decode(genes):
    """Level document for a genome of GENOME_LENGTH genes in [0, 1]."""
    return json.loads(_ufg.decode(list(genes)))


def features(genes):
    return json.loads(_ufg.features(list(genes)))


def playability(level):
    return json.loads(_ufg.playability(_text(level)))


def cover_score(level, row, col):
    return _ufg.cover_score(_text(level), row, col)


def ascii(level):
    return _ufg.ascii(_text(level))


def render_svg(level):
    return _ufg.render_svg(_text(level))


def train_tree(features, preferred):
    """C4.5 tree over 6-element feature rows; ``preferred`` holds one bool per row."""
    return json.loads(_ufg.train_tree([list(f) for f in features], [bool(p) for p in preferred]))


def classify(tree, feature_row):
    """Returns (is_preferred, confidence)."""
    return _ufg.classify(_text(tree), list(feature_row))


def run_experiment(seeds=20, iterations=10, assist="both", noise=0.02, threads=0):
    """One row per (seed, arm) of the simulated-designer experiment."""
    return json.loads(_ufg.run_experiment(seeds, iterations, assist, noise, threads))


class Session:
    """One interactive evolution run."""

    def __init__(self, id="py", params=None, policy=None, _core=None):
        if _core is None:
            _core = _ufg.Session(
                id,
                "" if params is None else json.dumps(params),
                "" if policy is None else json.dumps(policy),
            )
        self._core = _core

    @classmethod
    def replay(cls, transcript):
        return cls(_core=_ufg.Session.replay(_text(transcript)))

    @property
    def id(self):
        return self._core.id

    @property
    def generation(self):
        return self._core.generation

    @property
    def finished(self):
        return self._core.finished

    @property
    def turn(self):
        return self._core.turn

    @property
    def human_rounds(self):
        return self._core.human_rounds

    def submit(self, a, b):
        self._core.submit(a, b)

    def state(self):
        return json.loads(self._core.state())

    def transcript(self):
        return json.loads(self._core.transcript())

    def export_level(self, candidate):
        return json.loads(self._core.export_level(candidate))

    def features(self):
        return self._core.features()
