"""JSON certificates and their stand-alone verification.

Field elements are encoded integers, matrices are row-major nested lists
and every number is base 10.  Output is sorted and indented so the same
certificate always serializes to the same bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .embed import (EmbeddingCertificate, ObstructionCertificate, build_cover, closure_check,
                    make_instance, _has_order)
from .errors import CertificateError, CoverWreathError
from .grp import act

SCHEMA = "coverwreath-cert/1"


def _matrix(ctx, g):
    return ctx.rows(g)


def _flat(rows):
    return tuple(e for row in rows for e in row)


def embedding_to_json(cert: EmbeddingCertificate) -> dict:
    cover = build_cover(cert.instance)
    S, G = cover.S, cover.G
    return {
        "schema": SCHEMA,
        "instance": {"n": cert.instance.n, "q": cert.instance.q, "r": cert.instance.r},
        "field": {"p": S.field.p, "k": S.field.k, "modulus": list(S.field.modulus)},
        "kind": "embedding",
        "generators": [
            {"element": _matrix(S, s), "vector": list(img.vec), "image": _matrix(G, img.grp)}
            for s, img in zip(cert.generators, cert.images)
        ],
        "central_image": {
            "element": _matrix(S, cert.z),
            "vector": list(cert.central_image.vec),
            "coefficient": cert.coefficient,
            "image": _matrix(G, cert.central_image.grp),
        },
        "witness": None,
        "transcript": dict(cert.transcript),
        "verified": True,
    }


def obstruction_to_json(cert: ObstructionCertificate) -> dict:
    cover = build_cover(cert.instance)
    S, G = cover.S, cover.G
    return {
        "schema": SCHEMA,
        "instance": {"n": cert.instance.n, "q": cert.instance.q, "r": cert.instance.r},
        "field": {"p": S.field.p, "k": S.field.k, "modulus": list(S.field.modulus)},
        "kind": "obstruction",
        "generators": [],
        "central_image": None,
        "witness": {
            "a": cert.a,
            "s": _matrix(S, cert.s),
            "order_s": cert.order_s,
            "g": _matrix(G, cert.g),
            "order_g": cert.order_g,
            "fixed_point": list(cert.fixed_point),
        },
        "transcript": {"checks": ["order_s", "order_g", "fixed_point"]},
        "verified": True,
    }


def to_json(cert) -> dict:
    if isinstance(cert, EmbeddingCertificate):
        return embedding_to_json(cert)
    if isinstance(cert, ObstructionCertificate):
        return obstruction_to_json(cert)
    raise TypeError(f"not a certificate: {cert!r}")


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load(path) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise CertificateError(f"cannot parse certificate: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise CertificateError(f"missing or unknown schema tag (expected {SCHEMA!r})")
    for key in ("instance", "kind"):
        if key not in doc:
            raise CertificateError(f"missing field {key!r}")
    return doc


def _fail(msg):
    raise CertificateError(msg)


def verify(doc: dict, budget: int = 2_000_000) -> dict:
    """Re-run the certificate's checks; return a summary or raise CertificateError."""
    try:
        inst_doc = doc["instance"]
        inst = make_instance(int(inst_doc["n"]), int(inst_doc["q"]), int(inst_doc["r"]))
    except (KeyError, TypeError, ValueError, CoverWreathError) as exc:
        raise CertificateError(f"bad instance: {exc}") from exc
    cover = build_cover(inst)
    field = doc.get("field")
    if field is not None and list(field.get("modulus", [])) != list(cover.S.field.modulus):
        _fail("field modulus does not match the canonical construction")
    kind = doc["kind"]
    if kind == "embedding":
        return _verify_embedding(doc, cover, budget)
    if kind == "obstruction":
        return _verify_obstruction(doc, cover)
    _fail(f"unknown certificate kind {kind!r}")


def _verify_embedding(doc, cover, budget):
    S, G, r = cover.S, cover.G, cover.instance.r
    gens = doc.get("generators") or []
    if len(gens) != len(S.generators):
        _fail(f"expected {len(S.generators)} generator images, found {len(gens)}")
    npts = len(G.points)
    vectors = []
    for i, (entry, s) in enumerate(zip(gens, S.generators)):
        if S.canonical(_flat(entry["element"])) != s:
            _fail(f"generator {i} is not the cover generator s_{i}")
        if G.canonical(_flat(entry["image"])) != G.canonical(s):
            _fail(f"generator {i}: group part is not the projection of s_{i}")
        vec = entry["vector"]
        if len(vec) != npts or any(not 0 <= int(c) < r for c in vec):
            _fail(f"generator {i}: vector must have {npts} entries in [0, {r})")
        vectors.append([int(c) for c in vec])
    checked, z_vec, failure = closure_check(cover, np.array(vectors), budget)
    if failure:
        _fail(failure)
    central = doc.get("central_image") or _fail("missing central image")
    if S.canonical(_flat(central["element"])) != cover.z:
        _fail("central element is not the generator z of the kernel")
    c = int(central["coefficient"]) % r
    if c == 0:
        _fail("central coefficient is zero: psi would not be injective")
    if [int(x) for x in central["vector"]] != [c] * npts:
        _fail("central image vector is not c*t")
    if list(z_vec) != [c] * npts:
        _fail(f"psi(z) = {list(z_vec)} differs from the claimed central image")
    if G.canonical(_flat(central["image"])) != G.identity:
        _fail("central image must have trivial group part")
    return {"kind": "embedding", "closure_identities": checked, "coefficient": c}


def _verify_obstruction(doc, cover):
    S, G, r = cover.S, cover.G, cover.instance.r
    w = doc.get("witness") or _fail("missing witness")
    s = _flat(w["s"])
    if not S.contains(s):
        _fail("witness s is not a canonical element of the cover")
    g = _flat(w["g"])
    if cover.project(s) != g:
        _fail("g is not the image of s")
    if int(w["order_s"]) != r * r:
        _fail(f"claimed |s| = {w['order_s']} but the obstruction needs {r * r}")
    if not _has_order(S, s, r * r, r):
        _fail(f"order check failed: |s| != {r * r}")
    if int(w["order_g"]) != r:
        _fail(f"claimed |g| = {w['order_g']} but the obstruction needs {r}")
    if not _has_order(G, g, r, r):
        _fail(f"order check failed: |g| != {r}")
    x = tuple(int(c) for c in w["fixed_point"])
    if x not in set(G.points):
        _fail("fixed_point is not a normalized projective point")
    if act(G, x, g) != x:
        _fail("fixed point check failed: g moves the claimed point")
    return {"kind": "obstruction", "checks": 3}
