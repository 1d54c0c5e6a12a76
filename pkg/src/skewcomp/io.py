"""JSON file formats for matrices, words, rows, completions and certificates."""

from __future__ import annotations

import json

from .completion import certify_row
from .errors import FormatError
from .matrices import ElementaryWord, Matrix
from .pfaffian import AlternatingMatrix
from .rings import parse_ring
from .witt import EquivCertificate


def dumps(obj):
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _field(obj, name):
    if not isinstance(obj, dict) or name not in obj:
        raise FormatError(f"missing field {name!r}")
    return obj[name]


def _ring(obj, ring=None):
    if ring is not None:
        return ring
    return parse_ring(_field(obj, "ring"))


def _element(ring, x):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise FormatError(f"entries must be strings or integers, got {x!r}")
    return ring(str(x))


def matrix_to_json(m):
    if isinstance(m, AlternatingMatrix):
        m = m.body
    return {"ring": str(m.ring), "entries": m.to_strings()}


def matrix_from_json(obj, ring=None):
    ring = _ring(obj, ring)
    entries = _field(obj, "entries")
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise FormatError("entries must be a list of rows")
    return Matrix(ring, [[_element(ring, x) for x in row] for row in entries])


def word_to_json(word):
    return word.to_json()


def word_from_json(obj, ring=None):
    ring = _ring(obj, ring)
    letters = []
    for letter in _field(obj, "letters"):
        if not isinstance(letter, list) or len(letter) != 3:
            raise FormatError(f"bad letter {letter!r}")
        i, j, lam = letter
        letters.append((int(i), int(j), _element(ring, lam)))
    return ElementaryWord(ring, int(_field(obj, "size")), tuple(letters))


def row_to_json(row):
    return {"ring": str(row.ring), "v": [str(x) for x in row.v], "w": [str(x) for x in row.w]}


def row_from_json(obj, ring=None):
    ring = _ring(obj, ring)
    v = [_element(ring, x) for x in _field(obj, "v")]
    w = [_element(ring, x) for x in _field(obj, "w")]
    return certify_row(v, w)


def completion_to_json(result):
    out = matrix_to_json(result.K)
    if result.certificate is not None:
        out["certificate"] = word_to_json(result.certificate)
    return out


def certificate_to_json(cert):
    return cert.to_json()


def certificate_from_json(obj, ring=None):
    eps = _field(obj, "eps")
    return EquivCertificate(int(_field(obj, "l")), word_from_json(eps, ring))
