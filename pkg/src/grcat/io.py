"""Plain-text codecs for groups, actions, cochains and composite files.

Blank lines and ``#`` comments are ignored.  Composite files (``grcat``,
``xmod``, ``chain``) are sections separated by lines holding ``---``.
"""

import numpy as np

from .cohomology import Cochain, _all_tuples
from .errors import ParseError, ValidationError
from .fingroup import cyclic_decomposition, make_action, validate_group
from . import crossedmod, grcore, piccat

KINDS = ("group", "action", "cochain", "grcat", "xmod", "chain")


def _lines(text, offset=0):
    out = []
    for no, raw in enumerate(text.splitlines(), start=1 + offset):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def _ints(no, line, count=None):
    try:
        vals = [int(x) for x in line.split()]
    except ValueError:
        raise ParseError(no, f"expected integers, got {line!r}") from None
    if count is not None and len(vals) != count:
        raise ParseError(no, f"expected {count} integers, got {len(vals)}")
    return vals


def _header(lines, word, nargs):
    if not lines:
        raise ParseError(1, f"missing '{word}' header")
    no, line = lines[0]
    parts = line.split()
    if parts[0] != word or len(parts) != nargs + 1:
        raise ParseError(no, f"expected '{word}' header with {nargs} numbers")
    return _ints(no, " ".join(parts[1:]), nargs)


def _sections(text):
    sections, cur, start = [], [], 0
    for no, raw in enumerate(text.splitlines(), start=1):
        if raw.strip() == "---":
            sections.append((start, "\n".join(cur)))
            cur, start = [], no
        else:
            cur.append(raw)
    sections.append((start, "\n".join(cur)))
    return sections


def _expect_sections(text, k, kind):
    secs = _sections(text)
    if len(secs) != k:
        raise ParseError(1, f"{kind} file needs {k} sections separated by '---', found {len(secs)}")
    return secs


# ---------------------------------------------------------------------------
# single blocks


def decode_group(text, offset=0):
    lines = _lines(text, offset)
    (n,) = _header(lines, "group", 1)
    rows = lines[1:]
    if len(rows) != n:
        raise ParseError(lines[0][0], f"expected {n} table rows, got {len(rows)}")
    table = [_ints(no, line, n) for no, line in rows]
    return validate_group(np.array(table, dtype=np.int64).reshape(n, n))


def encode_group(G):
    rows = [f"group {G.order}"] + [" ".join(map(str, r)) for r in G.table.tolist()]
    return "\n".join(rows) + "\n"


def _decode_perms(text, offset, word="action"):
    lines = _lines(text, offset)
    q, m = _header(lines, word, 2)
    rows = lines[1:]
    if len(rows) != q:
        raise ParseError(lines[0][0], f"expected {q} rows, got {len(rows)}")
    return q, m, np.array([_ints(no, line, m) for no, line in rows], dtype=np.int64).reshape(q, m)


def decode_action(text, G, A, offset=0):
    q, m, P = _decode_perms(text, offset)
    if (q, m) != (G.order, A.order):
        raise ParseError(1 + offset, f"action header {q} {m} does not match groups {G.order} {A.order}")
    return make_action(G, A, P)


def encode_action(action):
    q, m = action.perms.shape
    rows = [f"action {q} {m}"] + [" ".join(map(str, r)) for r in action.perms.tolist()]
    return "\n".join(rows) + "\n"


def decode_cochain(text, action, offset=0):
    lines = _lines(text, offset)
    n, q, m = _header(lines, "cochain", 3)
    if (q, m) != (action.group.order, action.module.order):
        raise ParseError(lines[0][0], f"cochain header {q} {m} does not match the action")
    rows = lines[1:]
    if len(rows) != q ** n:
        raise ParseError(lines[0][0], f"expected {q ** n} rows, got {len(rows)}")
    expected = _all_tuples(q, n).tolist()
    values = []
    for (no, line), tup in zip(rows, expected):
        vals = _ints(no, line, n + 1)
        if vals[:n] != tup:
            raise ParseError(no, f"expected arguments {tup}, rows must be in lexicographic order")
        values.append(vals[n])
    try:
        return Cochain(action, n, values)
    except ValidationError as e:
        raise ParseError(lines[0][0], str(e)) from None


def encode_cochain(c):
    q, m = c.group.order, c.module.order
    rows = [f"cochain {c.degree} {q} {m}"]
    for args, v in c.items():
        rows.append(" ".join(map(str, args + (v,))))
    return "\n".join(rows) + "\n"


def _decode_images(text, offset, word, count):
    lines = _lines(text, offset)
    if len(lines) != 1 or not lines[0][1].startswith(f"{word}:"):
        raise ParseError((lines[0][0] if lines else 1 + offset), f"expected one line '{word}: <images>'")
    no, line = lines[0]
    return _ints(no, line[len(word) + 1:], count)


# ---------------------------------------------------------------------------
# composite files


def decode_grcat(text, normalize=True, check=True):
    """Decode and build; ``check=False`` skips every axiom on the associator."""
    (o1, g), (o2, a), (o3, act), (o4, coc) = _expect_sections(text, 4, "grcat")
    G = decode_group(g, o1)
    A = cyclic_decomposition(decode_group(a, o2))
    action = decode_action(act, G, A, o3)
    assoc = decode_cochain(coc, action, o4)
    if not check:
        return grcore.SkeletalGrCategory(G, A, action, assoc)
    return grcore.build(G, A, action, assoc, normalize=normalize)


def encode_grcat(cat):
    return "---\n".join(
        [encode_group(cat.G), encode_group(cat.A.group), encode_action(cat.action), encode_cochain(cat.assoc)]
    )


def decode_xmod(text):
    (o1, g), (o2, h), (o3, t), (o4, act) = _expect_sections(text, 4, "xmod")
    G = decode_group(g, o1)
    H = decode_group(h, o2)
    images = _decode_images(t, o3, "t", H.order)
    q, m, P = _decode_perms(act, o4)
    if (q, m) != (G.order, H.order):
        raise ParseError(o4 + 1, "action header does not match G and H")
    return crossedmod.validate(G, H, images, P)


def encode_xmod(X):
    act = [f"action {X.G.order} {X.H.order}"] + [" ".join(map(str, r)) for r in X.act.tolist()]
    return "---\n".join(
        [
            encode_group(X.G),
            encode_group(X.H),
            "t: " + " ".join(map(str, X.t.images.tolist())) + "\n",
            "\n".join(act) + "\n",
        ]
    )


def decode_chain(text):
    (o1, c0), (o2, c1), (o3, d) = _expect_sections(text, 3, "chain")
    C0 = decode_group(c0, o1)
    C1 = decode_group(c1, o2)
    images = _decode_images(d, o3, "d", C1.order)
    return piccat.chain_complex(C0, C1, images)


def encode_chain(C):
    return "---\n".join(
        [encode_group(C.C0.group), encode_group(C.C1.group), "d: " + " ".join(map(str, C.d.images.tolist())) + "\n"]
    )


def detect_kind(text):
    lines = _lines(text)
    if not lines:
        raise ParseError(1, "empty file")
    n = len(_sections(text))
    head = lines[0][1].split()[0]
    if n == 1:
        if head in ("group", "action", "cochain"):
            return head
    if n == 4:
        # an xmod has a 't:' section, a grcat a cochain
        return "xmod" if any(line.startswith("t:") for _, line in lines) else "grcat"
    if n == 3:
        return "chain"
    raise ParseError(lines[0][0], "cannot tell the file kind")


def decode(text, kind, **context):
    """Decode ``text`` as ``kind``; ``action`` and ``cochain`` need context.

    ``action`` takes ``G=`` and ``A=``; ``cochain`` takes ``action=``.
    """
    if kind == "group":
        return decode_group(text)
    if kind == "action":
        return decode_action(text, context["G"], context["A"])
    if kind == "cochain":
        return decode_cochain(text, context["action"])
    if kind == "grcat":
        return decode_grcat(text)
    if kind == "xmod":
        return decode_xmod(text)
    if kind == "chain":
        return decode_chain(text)
    raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")


def encode(value, kind):
    return {
        "group": encode_group,
        "action": encode_action,
        "cochain": encode_cochain,
        "grcat": encode_grcat,
        "xmod": encode_xmod,
        "chain": encode_chain,
    }[kind](value)


def format_hom(f):
    return " ".join(map(str, f.images.tolist()))
