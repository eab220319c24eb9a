"""Replayable construction records and the claims they carry.

A certificate lists construction steps (gadgets, literal graphs, products,
compositions) and claims about the final graph.  ``verify`` rebuilds the graph
from the steps, compares it with the shipped graph6 string, and re-checks every
claim on the shipped graph using integer arithmetic only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Sequence

from .errors import CertificateError, Graph6Error, GraphError, PolyError
from .graph import Graph, emit_graph6, is_connected, is_tree, parse_graph6
from .poly import IntPoly, abs_profile, is_unimodal, parse_poly_csv
from .spectral import DIVIDES_CERTIFIED, EXACT, KERNEL, ROOTS_PRESENT, charpoly, spectrum_divides

CLAIM_KINDS = ("divides", "contains", "connected", "tree", "unimodal")
STRUCTURAL = "structural"


@dataclass
class Claim:
    kind: str
    poly: IntPoly | None = None
    mode: str | None = None

    def __post_init__(self):
        if self.kind not in CLAIM_KINDS:
            raise CertificateError(f"unknown claim kind {self.kind!r}")
        if self.kind in ("divides", "contains") and self.poly is None:
            raise CertificateError(f"{self.kind} claim needs a polynomial")

    @property
    def level(self) -> str:
        if self.kind == "divides":
            return DIVIDES_CERTIFIED
        if self.kind == "contains":
            return ROOTS_PRESENT
        return STRUCTURAL

    def describe(self) -> str:
        if self.poly is None:
            return self.kind
        return f"{self.kind} {self.poly.to_csv()} ({self.mode})"

    def check(self, g: Graph) -> bool:
        if self.kind == "connected":
            return g.order >= 1 and is_connected(g)
        if self.kind == "tree":
            return is_tree(g)
        if self.kind == "unimodal":
            return is_unimodal(abs_profile(charpoly(g)))
        if self.kind == "divides":
            return spectrum_divides(self.poly, g, EXACT, exact_cap=max(g.order, 1)).divides
        # contains: every root present, by kernel rank
        return spectrum_divides(self.poly, g, KERNEL).divides

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "poly": self.poly.to_csv() if self.poly is not None else None,
            "mode": self.mode,
            "level": self.level,
        }

    @classmethod
    def from_json(cls, d: dict[str, Any]) -> Claim:
        try:
            poly = parse_poly_csv(d["poly"]) if d.get("poly") is not None else None
            return cls(d["kind"], poly, d.get("mode"))
        except (KeyError, TypeError, PolyError) as exc:
            raise CertificateError(f"malformed claim {d!r}") from exc


@dataclass
class Certificate:
    steps: list[dict[str, Any]]
    claims: list[Claim]
    final_graph6: str
    gadget_variant: str | None = None
    attachment_choices: list[dict[str, Any]] = field(default_factory=list)

    def to_json(self) -> str:
        doc = {
            "steps": self.steps,
            "claims": [c.to_json() for c in self.claims],
            "final_graph6": self.final_graph6,
            "gadget_variant": self.gadget_variant,
            "attachment_choices": self.attachment_choices,
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Certificate:
        try:
            doc = json.loads(text)
            return cls(
                steps=list(doc["steps"]),
                claims=[Claim.from_json(c) for c in doc["claims"]],
                final_graph6=doc["final_graph6"],
                gadget_variant=doc.get("gadget_variant"),
                attachment_choices=list(doc.get("attachment_choices", [])),
            )
        except (ValueError, KeyError, TypeError) as exc:
            if isinstance(exc, CertificateError):
                raise
            raise CertificateError(f"malformed certificate: {exc}") from exc

    def final_graph(self) -> Graph:
        return parse_graph6(self.final_graph6)


def replay(steps: Sequence[dict[str, Any]]) -> Graph:
    """Rebuild the graph described by the steps; the last step is the result."""
    from .constructions import cartesian_sum, double_composition, gadget_F, tensor_product

    built: dict[str, Graph] = {}

    def get(ref) -> Graph:
        if ref not in built:
            raise CertificateError(f"step refers to unknown id {ref!r}")
        return built[ref]

    if not steps:
        raise CertificateError("certificate has no steps")
    try:
        for st in steps:
            op = st["op"]
            if op == "literal":
                g = parse_graph6(st["graph6"])
            elif op == "gadget":
                g = gadget_F(st["variant"])
            elif op == "tensor":
                g = tensor_product(get(st["args"][0]), get(st["args"][1]))
            elif op == "cartesian":
                g = cartesian_sum(get(st["args"][0]), get(st["args"][1]))
            elif op == "compose":
                parts = [(get(p["graph"]), p["v"], p["x"]) for p in st["parts"]]
                g = double_composition(get(st["host"]), parts)
            else:
                raise CertificateError(f"unknown step operation {op!r}")
            built[st["id"]] = g
    except (KeyError, IndexError, TypeError) as exc:
        raise CertificateError(f"malformed step: {exc}") from exc
    except (GraphError, Graph6Error) as exc:
        raise CertificateError(f"step failed to replay: {exc}") from exc
    return built[steps[-1]["id"]]


@dataclass
class VerifyReport:
    replay_matches: bool
    failures: list[str]

    @property
    def ok(self) -> bool:
        return self.replay_matches and not self.failures

    def lines(self) -> list[str]:
        out = ["replay: " + ("matches final graph" if self.replay_matches else "MISMATCH with final graph")]
        out.extend(f"claim failed: {f}" for f in self.failures)
        if self.ok:
            out.append("all claims verified")
        return out


def verify(cert: Certificate) -> VerifyReport:
    shipped = cert.final_graph()
    rebuilt = replay(cert.steps)
    failures = [c.describe() for c in cert.claims if not c.check(shipped)]
    return VerifyReport(rebuilt == shipped, failures)


class Recorder:
    """Builds graphs while logging the steps that produce them."""

    def __init__(self, gadget_variant: str | None = None):
        self.steps: list[dict[str, Any]] = []
        self.graphs: dict[str, Graph] = {}
        self.gadget_variant = gadget_variant
        self.attachments: list[dict[str, Any]] = []

    def _add(self, step: dict[str, Any], g: Graph) -> str:
        sid = f"s{len(self.steps)}"
        step["id"] = sid
        self.steps.append(step)
        self.graphs[sid] = g
        return sid

    def graph(self, sid: str) -> Graph:
        return self.graphs[sid]

    def literal(self, g: Graph, note: str = "") -> str:
        return self._add({"op": "literal", "graph6": emit_graph6(g), "note": note}, g)

    def gadget(self, variant: str) -> str:
        from .constructions import gadget_F

        return self._add({"op": "gadget", "variant": variant}, gadget_F(variant))

    def tensor(self, a: str, b: str) -> str:
        from .constructions import tensor_product

        return self._add({"op": "tensor", "args": [a, b]}, tensor_product(self.graphs[a], self.graphs[b]))

    def cartesian(self, a: str, b: str) -> str:
        from .constructions import cartesian_sum

        return self._add({"op": "cartesian", "args": [a, b]}, cartesian_sum(self.graphs[a], self.graphs[b]))

    def compose(self, host: str, parts: Sequence[tuple[str, int, int]]) -> str:
        from .constructions import double_composition

        g = double_composition(self.graphs[host], [(self.graphs[p], v, x) for p, v, x in parts])
        recs = [{"graph": p, "v": v, "x": x} for p, v, x in parts]
        sid = self._add({"op": "compose", "host": host, "parts": recs}, g)
        self.attachments.extend({"step": sid, **r} for r in recs)
        return sid

    def finish(self, result: str, claims: list[Claim]) -> Certificate:
        """Close the record; ``result`` must be the last step.  Claims are checked now."""
        if self.steps[-1]["id"] != result:
            raise CertificateError("the result must be the last recorded step")
        g = self.graphs[result]
        for c in claims:
            if not c.check(g):
                raise AssertionError(f"construction produced a graph failing its own claim: {c.describe()}")
        return Certificate(list(self.steps), list(claims), emit_graph6(g), self.gadget_variant, list(self.attachments))

    @classmethod
    def single(cls, g: Graph, claims: list[Claim], note: str = "") -> Certificate:
        rec = cls()
        sid = rec.literal(g, note)
        return rec.finish(sid, claims)
