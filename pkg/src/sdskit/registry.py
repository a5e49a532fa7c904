"""Name-based registry of structures, presentations, and datum formats."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

from . import chinese, extra, young
from .rewriting import RewritingSystem
from .sds import Presentation, StringDataStructure


@dataclass(frozen=True)
class StructureEntry:
    factory: Callable[[int], StringDataStructure]
    format_datum: Callable
    parse_datum: Callable


def _format_staircase(t):
    return json.dumps(chinese.staircase_to_json(t))


def _parse_staircase(text: str, n: int):
    if not text.strip():
        return chinese.empty_staircase(n)
    return chinese.staircase_from_json(json.loads(text))


def _format_qr(t):
    return json.dumps(extra.qr_to_json(t))


def _parse_qr(text: str, n: int):
    if not text.strip():
        return ()
    rows = tuple(tuple(r) for r in json.loads(text)["rows"])
    if rows and not extra.is_quasi_ribbon(rows):
        raise ValueError("not a valid quasi-ribbon tableau")
    return rows


def _format_ps(t):
    return json.dumps(extra.ps_to_json(t))


def _parse_ps(text: str, n: int):
    if not text.strip():
        return ()
    return tuple(tuple(c) for c in json.loads(text)["columns_bottom_up"])


def _parse_tableau(text: str, n: int):
    return young.parse_tableau(text)


def _parse_tree(text: str, n: int):
    if not text.strip():
        return None
    return extra.parse_tree(text)


STRUCTURES: dict[str, StructureEntry] = {
    "young-right": StructureEntry(young.young_right, young.format_tableau, _parse_tableau),
    "young-left": StructureEntry(young.young_left, young.format_tableau, _parse_tableau),
    "chinese-right": StructureEntry(chinese.chinese_right, _format_staircase, _parse_staircase),
    "chinese-left": StructureEntry(chinese.chinese_left, _format_staircase, _parse_staircase),
    "hypoplactic-right": StructureEntry(extra.hypoplactic_right, _format_qr, _parse_qr),
    "hypoplactic-left": StructureEntry(extra.hypoplactic_left, _format_qr, _parse_qr),
    "sylvester-left": StructureEntry(extra.sylvester_left, extra.format_tree, _parse_tree),
    "lps-right": StructureEntry(extra.lps_right, _format_ps, _parse_ps),
    "rps-right": StructureEntry(extra.rps_right, _format_ps, _parse_ps),
}

COMMUTATION_PAIRS: dict[str, tuple[str, str]] = {
    "young": ("young-right", "young-left"),
    "chinese": ("chinese-right", "chinese-left"),
    "hypoplactic": ("hypoplactic-right", "hypoplactic-left"),
}

# congruence paired with each structure for cross-section style checks;
# bounds for the variable-length families come from the word-length bound
DEFAULT_CONGRUENCE: dict[str, Callable[[int, int], RewritingSystem]] = {
    "young-right": lambda n, L: young.knuth_srs(n),
    "young-left": lambda n, L: young.knuth_srs(n),
    "chinese-right": lambda n, L: chinese.chinese_relations(n),
    "chinese-left": lambda n, L: chinese.chinese_relations(n),
    "hypoplactic-right": lambda n, L: extra.hypoplactic_srs(n),
    "hypoplactic-left": lambda n, L: extra.hypoplactic_srs(n),
    "sylvester-left": lambda n, L: extra.sylvester_srs(n, max(0, L - 3)),
    "lps-right": lambda n, L: extra.lps_srs(n, max(1, L - 2)),
    "rps-right": lambda n, L: extra.rps_srs(n, max(1, L - 2)),
}


def get_structure(name: str, n: int) -> StringDataStructure:
    if name not in STRUCTURES:
        raise KeyError(f"unknown structure {name!r}")
    return STRUCTURES[name].factory(n)


def build_presentation(name: str, n: int, max_len: int | None = None) -> Presentation:
    """Presentations by name; max_len bounds the variable-length families."""
    L = max_len if max_len is not None else 4
    builders: dict[str, Callable[[], Presentation]] = {
        "knuth": lambda: Presentation(young.knuth_srs(n), None),
        "knuth-reversed": lambda: Presentation(young.knuth_srs(n, "reversed"), None),
        "column": lambda: young.column_presentation(n),
        "row": lambda: young.row_presentation(n, L),
        "chinese-relations": lambda: Presentation(chinese.chinese_relations(n), None),
        "chinese-precolumn": lambda: chinese.precolumn_presentation(n),
        "chinese-completed": lambda: chinese.completed_presentation(n),
        "hypoplactic": lambda: Presentation(extra.hypoplactic_srs(n), None),
        "sylvester": lambda: Presentation(extra.sylvester_srs(n, L), None),
        "lps": lambda: Presentation(extra.lps_srs(n, L), None),
        "rps": lambda: Presentation(extra.rps_srs(n, L), None),
    }
    if name not in builders:
        raise KeyError(f"unknown presentation {name!r}")
    return builders[name]()


PRESENTATION_NAMES = ("knuth", "knuth-reversed", "column", "row", "chinese-relations",
                      "chinese-precolumn", "chinese-completed", "hypoplactic",
                      "sylvester", "lps", "rps")
