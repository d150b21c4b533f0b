"""JSON file formats for subgroup systems, complexes and extension data.

Every document carries ``format_version`` and ``kind``. Permutations are
written in 0-based cycle notation. Complex automorphisms are lists of face
ids: entry ``k`` is the image of ``faces[k]``.
"""
from __future__ import annotations

import json
import os
import tempfile

from .cgroup import SubgroupSystem
from .complex import from_covers
from .errors import ParseError
from .permgroup import PermGroup, Permutation, from_cycles

FORMAT_VERSION = 1

__all__ = [
    "FORMAT_VERSION", "system_to_dict", "system_from_dict", "complex_to_dict",
    "complex_from_dict", "extension_from_dict", "extension_to_dict",
    "load_json", "write_atomic", "load_system", "load_complex",
]


def _check_header(doc, kind):
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {version!r}; expected {FORMAT_VERSION}")
    if doc.get("kind", kind) != kind:
        raise ParseError(f"expected a {kind!r} document, got {doc.get('kind')!r}")


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None


def write_atomic(path, text):
    """Write through a temporary file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- subgroup systems ------------------------------------------------------------

def system_to_dict(sys):
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "group-spec",
        "degree": sys.gamma.degree,
        "rank": sys.rank,
        "subgroups": [[str(g) for g in r.generators] for r in sys.subgroups],
    }
    if sys.name:
        doc["name"] = sys.name
    return doc


def _perm_list(items, degree, where):
    if not isinstance(items, list):
        raise ParseError(f"{where}: expected a list of cycle strings")
    out = []
    for k, text in enumerate(items):
        if not isinstance(text, str):
            raise ParseError(f"{where}[{k}]: expected a cycle string")
        out.append(from_cycles(text, degree))
    return out


def system_from_dict(doc, *, validate=True):
    """Parse a group-spec document.

    ``gamma`` (optional) lists generators of the whole group; by default it
    is generated by all the subgroup generators.
    """
    _check_header(doc, "group-spec")
    try:
        degree = int(doc["degree"])
        subs = doc["subgroups"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"group-spec: missing or bad field {exc}") from None
    if not isinstance(subs, list):
        raise ParseError("group-spec: 'subgroups' must be a list")
    if "rank" in doc and int(doc["rank"]) != len(subs) - 2:
        raise ParseError(f"group-spec: rank {doc['rank']} needs {int(doc['rank']) + 2} subgroups, "
                         f"got {len(subs)}")
    groups = [PermGroup(degree, _perm_list(g, degree, f"subgroups[{k}]"))
              for k, g in enumerate(subs)]
    if "gamma" in doc:
        gamma = PermGroup(degree, _perm_list(doc["gamma"], degree, "gamma"))
    else:
        gamma = PermGroup(degree, [g for grp in groups for g in grp.generators])
    return SubgroupSystem(gamma, groups, validate=validate, name=doc.get("name"))


def load_system(path, *, validate=True):
    return system_from_dict(load_json(path), validate=validate)


# -- complexes ----------------------------------------------------------------------

def complex_to_dict(K):
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "complex",
        "rank": K.n,
        "faces": [{"id": K.ids[f], "rank": K.ranks[f],
                   **({"label": K.labels[f]} if K.labels[f] is not None else {})}
                  for f in range(len(K))],
        "covers": [[K.ids[a], K.ids[b]] for a, b in K.covers()],
    }
    if K.automorphisms:
        doc["automorphisms"] = [[K.ids[x] for x in p.images] for p in K.automorphisms]
    if K.base_flag is not None:
        doc["base_flag"] = [K.ids[f] for f in K.base_flag]
    return doc


def complex_from_dict(doc):
    _check_header(doc, "complex")
    try:
        n = int(doc["rank"])
        faces = [(f["id"], int(f["rank"]), f.get("label")) for f in doc["faces"]]
        covers = [tuple(c) for c in doc["covers"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"complex: missing or bad field {exc}") from None
    if any(len(c) != 2 for c in covers):
        raise ParseError("complex: every cover is a pair [lower_id, upper_id]")
    # JSON has no tuples; hashable ids only
    for fid, _, _ in faces:
        if isinstance(fid, (list, dict)):
            raise ParseError(f"complex: face id {fid!r} must be a string or integer")
    K = from_covers(n, faces, covers)
    autos = []
    for k, images in enumerate(doc.get("automorphisms", [])):
        try:
            autos.append(Permutation([K.index_of_id(x) for x in images]))
        except KeyError as exc:
            raise ParseError(f"automorphisms[{k}]: unknown face id {exc}") from None
        except ValueError as exc:
            raise ParseError(f"automorphisms[{k}]: {exc}") from None
    base = doc.get("base_flag")
    if base is not None:
        try:
            base = [K.index_of_id(x) for x in base]
        except KeyError as exc:
            raise ParseError(f"base_flag: unknown face id {exc}") from None
    if autos or base is not None:
        K = from_covers(n, faces, covers, automorphisms=autos, base_flag=base)
    return K


def load_complex(path):
    return complex_from_dict(load_json(path))


# -- extension data ------------------------------------------------------------------

def _system_ref(ref, where):
    """A group-spec document inline, or ``{"catalog": name}``."""
    if isinstance(ref, dict) and "catalog" in ref:
        from .catalog import get
        try:
            return get(ref["catalog"]).system
        except KeyError:
            raise ParseError(f"{where}: unknown catalog entry {ref['catalog']!r}") from None
    if isinstance(ref, dict) and "path" in ref:
        return load_system(ref["path"], validate=False)
    return system_from_dict(ref, validate=False)


def extension_from_dict(doc):
    from .derived import ExtensionData
    _check_header(doc, "extension")
    try:
        base = _system_ref(doc["base"], "base")
        cand = _system_ref(doc["candidate"], "candidate")
        pairs = doc["pi"]
    except KeyError as exc:
        raise ParseError(f"extension: missing field {exc}") from None
    pi = []
    for k, pair in enumerate(pairs):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ParseError(f"pi[{k}]: expected [candidate_element, base_element]")
        pi.append((from_cycles(pair[0], cand.gamma.degree),
                   from_cycles(pair[1], base.gamma.degree)))
    return ExtensionData(base, cand, tuple(pi))


def extension_to_dict(data):
    return {
        "format_version": FORMAT_VERSION,
        "kind": "extension",
        "base": system_to_dict(data.base),
        "candidate": system_to_dict(data.candidate),
        "pi": [[str(a), str(b)] for a, b in data.pi],
    }
