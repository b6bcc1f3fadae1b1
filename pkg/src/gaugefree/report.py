"""Input documents, freeness reports and the analyze/verify workflows."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Optional, Union

from . import correspondence as cc
from .graph import (
    INF,
    DirectedMultigraph,
    Edge,
    GraphError,
    infinite_emitters,
    is_infinite,
    is_row_finite,
    receiver_chain,
    receivers_at_least,
    sinks,
)
from .leavitt import LeavittAlgebra, OracleVerdict, format_monomial

FULL = None  # group marker for the circle


class InputError(ValueError):
    """Bad input document; the message names the offending field or line."""


class ConsistencyError(AssertionError):
    """Correspondence-level and graph-level verdicts disagree."""


@dataclass(frozen=True)
class InputDocument:
    kind: str  # "graph" or "matrix"
    graph: Optional[DirectedMultigraph] = None
    corr: Optional[cc.CommutativeCorrespondence] = None

    @property
    def correspondence(self) -> cc.CommutativeCorrespondence:
        return self.corr if self.kind == "matrix" else cc.from_graph(self.graph)

    def oracle_graph(self) -> DirectedMultigraph:
        """Graph form for the oracle; matrix entries become parallel edges."""
        if self.kind == "graph":
            return self.graph
        return matrix_to_graph(self.corr)


def matrix_to_graph(c: cc.CommutativeCorrespondence) -> DirectedMultigraph:
    edges, bundles = [], []
    for u, row in zip(c.points, c.dims):
        for v, d in zip(c.points, row):
            if is_infinite(d):
                bundles.append((u, v))
            else:
                edges.extend(Edge(f"{u}->{v}#{i}", u, v) for i in range(d))
    return DirectedMultigraph(c.points, tuple(edges), tuple(bundles))


def _require_list(obj, name):
    if not isinstance(obj, list):
        raise InputError(f"field {name!r} must be a list")
    return obj


def _require_str(obj, name):
    if not isinstance(obj, str):
        raise InputError(f"field {name!r} must be a string, got {obj!r}")
    return obj


def _unique(ids, name):
    seen = set()
    for i, x in enumerate(ids):
        if x in seen:
            raise InputError(f"{name}[{i}]: duplicate id {x!r}")
        seen.add(x)


def parse_document(data: Any) -> InputDocument:
    if not isinstance(data, dict):
        raise InputError("top level must be an object")
    if "vertices" in data and "points" in data:
        raise InputError("document mixes graph form ('vertices') and matrix form ('points')")
    if "vertices" in data:
        return _parse_graph(data)
    if "points" in data:
        return _parse_matrix(data)
    raise InputError("document needs either 'vertices' (graph form) or 'points' (matrix form)")


def _parse_graph(data: dict) -> InputDocument:
    extra = set(data) - {"vertices", "edges", "infinite"}
    if extra:
        raise InputError(f"unknown field {sorted(extra)[0]!r} in graph form")
    vertices = [_require_str(v, f"vertices[{i}]") for i, v in enumerate(_require_list(data["vertices"], "vertices"))]
    if not vertices:
        raise InputError("field 'vertices' must be non-empty")
    _unique(vertices, "vertices")
    declared = set(vertices)
    edges = []
    for i, e in enumerate(_require_list(data.get("edges", []), "edges")):
        if not isinstance(e, dict):
            raise InputError(f"edges[{i}] must be an object")
        for key in ("id", "src", "dst"):
            if key not in e:
                raise InputError(f"edges[{i}].{key} is missing")
            _require_str(e[key], f"edges[{i}].{key}")
        for key in ("src", "dst"):
            if e[key] not in declared:
                raise InputError(f"edges[{i}].{key}: unknown vertex {e[key]!r}")
        edges.append(Edge(e["id"], e["src"], e["dst"]))
    _unique([e.id for e in edges], "edges")
    bundles = []
    for i, b in enumerate(_require_list(data.get("infinite", []), "infinite")):
        if not isinstance(b, dict):
            raise InputError(f"infinite[{i}] must be an object")
        for key in ("src", "dst"):
            if key not in b:
                raise InputError(f"infinite[{i}].{key} is missing")
            if _require_str(b[key], f"infinite[{i}].{key}") not in declared:
                raise InputError(f"infinite[{i}].{key}: unknown vertex {b[key]!r}")
        pair = (b["src"], b["dst"])
        if pair in bundles:
            raise InputError(f"infinite[{i}]: duplicate bundle {list(pair)!r}")
        bundles.append(pair)
    try:
        g = DirectedMultigraph(tuple(vertices), tuple(edges), tuple(bundles))
    except GraphError as exc:  # pragma: no cover - checks above are stricter
        raise InputError(str(exc)) from exc
    return InputDocument("graph", graph=g)


def _parse_matrix(data: dict) -> InputDocument:
    extra = set(data) - {"points", "dims"}
    if extra:
        raise InputError(f"unknown field {sorted(extra)[0]!r} in matrix form")
    points = [_require_str(p, f"points[{i}]") for i, p in enumerate(_require_list(data["points"], "points"))]
    if not points:
        raise InputError("field 'points' must be non-empty")
    _unique(points, "points")
    if "dims" not in data:
        raise InputError("field 'dims' is missing")
    rows = _require_list(data["dims"], "dims")
    if len(rows) != len(points):
        raise InputError(f"dims: matrix is not square ({len(rows)} rows for {len(points)} points)")
    dims = []
    for i, row in enumerate(rows):
        row = _require_list(row, f"dims[{i}]")
        if len(row) != len(points):
            raise InputError(f"dims[{i}]: matrix is not square ({len(row)} entries for {len(points)} points)")
        out = []
        for j, d in enumerate(row):
            if d == "inf":
                out.append(INF)
            elif isinstance(d, int) and not isinstance(d, bool):
                if d < 0:
                    raise InputError(f"dims[{i}][{j}]: negative entry {d}")
                out.append(d)
            else:
                raise InputError(f"dims[{i}][{j}]: expected a non-negative integer or \"inf\", got {d!r}")
        dims.append(tuple(out))
    return InputDocument("matrix", corr=cc.CommutativeCorrespondence(tuple(points), tuple(dims)))


def parse_input(raw: Union[bytes, str]) -> InputDocument:
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"input is not UTF-8: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_document(data)


def canonical(doc: InputDocument) -> dict:
    if doc.kind == "graph":
        g = doc.graph
        return {
            "vertices": list(g.vertices),
            "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in g.edges],
            "infinite": [{"src": s, "dst": d} for s, d in g.infinite],
        }
    c = doc.corr
    return {
        "points": list(c.points),
        "dims": [["inf" if is_infinite(d) else d for d in row] for row in c.dims],
    }


def serialize(doc: InputDocument) -> str:
    return json.dumps(canonical(doc), sort_keys=True)


# -- groups -----------------------------------------------------------------

def parse_groups(spec: str) -> list[Optional[int]]:
    groups: list[Optional[int]] = []
    for tok in spec.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok.lower() in ("full", "inf", "circle"):
            g = FULL
        else:
            try:
                g = int(tok.removeprefix("Z/").removeprefix("z/"))
            except ValueError:
                raise InputError(f"unknown group {tok!r}; use 'full' or an integer k >= 2") from None
            check_order(g)
        if g not in groups:
            groups.append(g)
    if not groups:
        raise InputError("no groups requested")
    return groups


def check_order(k: int) -> None:
    if k < 2:
        raise InputError(f"Z/{k} is not allowed: the finite gauge actions are Z/k with k >= 2")


def group_label(k: Optional[int]) -> str:
    return "full" if k is FULL else f"Z/{k}"


# -- analysis ---------------------------------------------------------------

def graph_level_free(g: DirectedMultigraph, k: Optional[int]) -> bool:
    """The graph restatements: no sinks and row-finite for the circle; sinks
    and infinite emitters receiving length k-1 paths for Z/k."""
    if k is FULL:
        return not sinks(g) and is_row_finite(g)
    return (sinks(g) | infinite_emitters(g)) <= receivers_at_least(g, k - 1)


def _verdict(c: cc.CommutativeCorrespondence, k: Optional[int]) -> cc.Verdict:
    return cc.full_gauge_free(c) if k is FULL else cc.zk_gauge_free(c, k)


def analyze(doc: InputDocument, groups: list[Optional[int]]) -> dict:
    for k in groups:
        if k is not FULL:
            check_order(k)
    c = doc.correspondence
    chain, artinian, m = cc.ideal_chain(c)
    report: dict[str, Any] = {
        "input": canonical(doc),
        "form": doc.kind,
        "conditions": {
            "faithful": cc.is_faithful(c),
            "fg": cc.is_fg(c),
            "artinian": artinian,
            "katsura_support": c.ordered(cc.katsura_ideal(c).support),
        },
        "chain": {
            "supports": [c.ordered(i.support) for i in chain],
            "stabilization_index": m,
        },
        "groups": [],
    }
    if doc.kind == "graph":
        s_chain, s_m = receiver_chain(doc.graph)
        if [set(s) for s in s_chain] != [set(i.support) for i in chain] or s_m != m:
            raise ConsistencyError("ideal chain differs from the receiver chain")
    for k in groups:
        v = _verdict(c, k)
        entry: dict[str, Any] = {
            "group": group_label(k),
            "free": v.free,
            "witness": v.witness,
            "oracle": {"status": "skipped"},
        }
        if doc.kind == "graph":
            g_free = graph_level_free(doc.graph, k)
            if g_free != v.free:
                raise ConsistencyError(
                    f"{group_label(k)}: correspondence verdict {v.free} but graph verdict {g_free}"
                )
            entry["graph_level_free"] = g_free
        report["groups"].append(entry)
    return report


def _oracle_entry(alg: LeavittAlgebra, ov: OracleVerdict) -> dict:
    out: dict[str, Any] = {"status": ov.status}
    if ov.certified:
        out["certificates"] = {
            ("+" if d > 0 else "-"): {
                "max_len": cert.max_len,
                "text": cert.describe(),
                "terms": [
                    {
                        "left": format_monomial(t.left),
                        "right": format_monomial(t.right),
                        "coefficient": str(t.coefficient),
                    }
                    for t in cert.terms
                ],
                "reverified": alg.verify_certificate(cert),
            }
            for d, cert in sorted(ov.certificates.items(), reverse=True)
        }
    return out


def verify(
    doc: InputDocument,
    groups: list[Optional[int]],
    max_len: int = 6,
    bundle_size: int = 3,
    budget: Optional[int] = None,
) -> dict:
    """Analyze, then run the Leavitt oracle per group.

    The oracle only ever certifies freeness, so an undecided search agrees
    with a not-free verdict and disagrees with a free one.
    """
    report = analyze(doc, groups)
    alg = LeavittAlgebra(doc.oracle_graph(), bundle_size)
    agree_all = True
    for k, entry in zip(groups, report["groups"]):
        ov = alg.strong_grading_check(k, max_len, budget)
        entry["oracle"] = _oracle_entry(alg, ov)
        entry["agreement"] = ov.certified or not entry["free"]
        agree_all &= entry["agreement"]
    report["oracle"] = {"max_len": max_len, "bundle_size": bundle_size}
    report["agreement"] = agree_all
    return report


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def to_text(report: dict) -> str:
    inp = report["input"]
    names = inp.get("vertices", inp.get("points"))
    cond = report["conditions"]
    lines = [
        f"{report['form']} input over {len(names)} point(s): {', '.join(names)}",
        f"faithful: {_yn(cond['faithful'])}  FG: {_yn(cond['fg'])}  artinian: {_yn(cond['artinian'])}",
        f"J_E support: {{{', '.join(cond['katsura_support'])}}}",
        "ideal chain: "
        + " ⊇ ".join("{" + ", ".join(s) + "}" for s in report["chain"]["supports"])
        + f"  (stabilizes at {report['chain']['stabilization_index']})",
    ]
    for entry in report["groups"]:
        head = f"[{entry['group']}] {'free' if entry['free'] else 'not free'}"
        lines.append(head + f" -- {_witness_text(entry['witness'])}")
        oracle = entry["oracle"]
        if oracle["status"] != "skipped":
            lines.append(f"    oracle: {oracle['status']}; {'agrees' if entry['agreement'] else 'DISAGREES'}")
            for sign, cert in oracle.get("certificates", {}).items():
                lines.append(f"    ({sign}) {cert['text']}")
    if "agreement" in report:
        lines.append("verify: " + ("agreement" if report["agreement"] else "DISAGREEMENT"))
    return "\n".join(lines) + "\n"


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def _witness_text(w: dict) -> str:
    if "failed" in w:
        if "points" in w and w["failed"] == "faithful":
            return f"not faithful: zero row(s) at {', '.join(w['points'])}"
        if w["failed"] == "fg":
            return "not FG: infinite entries at " + ", ".join(f"({u},{v})" for u, v in w["entries"])
        return f"{w['failed']} fails at {', '.join(w['points'])}"
    if "conditions" in w:
        return "faithful, FG and artinian"
    if not w["paths"]:
        return "every point lies in J_E"
    return "; ".join(
        f"{p} receives {' '.join(a + '->' + b for a, b in hops) or 'the empty path'}"
        for p, hops in w["paths"].items()
    )
