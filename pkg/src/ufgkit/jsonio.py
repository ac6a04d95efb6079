"""JSON wire formats: posets, families, catalogs, reports.

Serialization is canonical (sorted keys, two-space indent, trailing
newline, canonically ordered lists), so writing what a parser read back
out reproduces the bytes exactly.
"""

from __future__ import annotations

import json
from typing import Any

from .connectedness import (
    ConnectednessReport,
    CorrigendumScenario,
    FalsificationReport,
    ScenarioCheck,
    ConnectednessViolation,
)
from .context import DistinguishingSet, parse_attribute
from .errors import InvalidFormat
from .orders import GroundSet, Poset, canonical_key, make_poset
from .ufg import UfgCatalog, UfgCertificate


def dumps_canonical(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


# --- posets and families -----------------------------------------------------


def poset_to_obj(p: Poset) -> dict:
    return {
        "elements": list(p.ground.labels),
        "relations": [[a, b] for a, b in p.label_pairs()],
    }


def _require(condition: bool, where: str, message: str) -> None:
    if not condition:
        raise InvalidFormat(f"{where}: {message}")


def _parse_relations(obj: Any, where: str) -> list[tuple[str, str]]:
    _require(isinstance(obj, list), where, "expected a list of [smaller, larger] pairs")
    pairs: list[tuple[str, str]] = []
    seen = set()
    for idx, entry in enumerate(obj):
        spot = f"{where}[{idx}]"
        _require(
            isinstance(entry, list) and len(entry) == 2, spot, "expected a pair"
        )
        a, b = entry
        _require(isinstance(a, str) and isinstance(b, str), spot, "labels must be strings")
        if (a, b) in seen:
            raise InvalidFormat(f"{spot}: duplicate relation [{a}, {b}]")
        seen.add((a, b))
        pairs.append((a, b))
    return pairs


def _parse_elements(obj: Any, where: str) -> GroundSet:
    _require(isinstance(obj, list) and obj, where, "expected a nonempty list of labels")
    _require(all(isinstance(x, str) for x in obj), where, "labels must be strings")
    return GroundSet(obj)


def poset_from_obj(obj: Any, where: str = "poset") -> Poset:
    _require(isinstance(obj, dict), where, "expected an object")
    ground = _parse_elements(obj.get("elements"), f"{where}.elements")
    pairs = _parse_relations(obj.get("relations"), f"{where}.relations")
    return make_poset(ground, pairs)


def family_to_obj(members) -> dict:
    members = sorted(members, key=canonical_key)
    ground = members[0].ground
    return {
        "elements": list(ground.labels),
        "posets": [[[a, b] for a, b in m.label_pairs()] for m in members],
    }


def family_from_obj(obj: Any, where: str = "family") -> tuple[GroundSet, list[Poset]]:
    _require(isinstance(obj, dict), where, "expected an object")
    ground = _parse_elements(obj.get("elements"), f"{where}.elements")
    raw = obj.get("posets")
    _require(isinstance(raw, list) and raw, f"{where}.posets", "expected a nonempty list")
    members = []
    for idx, rels in enumerate(raw):
        pairs = _parse_relations(rels, f"{where}.posets[{idx}]")
        members.append(make_poset(ground, pairs))
    return ground, members


def load_family_file(path: str) -> tuple[GroundSet, list[Poset]]:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidFormat(
                f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}"
            ) from None
    return family_from_obj(obj, where=path)


# --- derived structures ------------------------------------------------------


def distinguishing_to_obj(d: DistinguishingSet) -> dict:
    ground = d.member.ground
    return {
        "member": poset_to_obj(d.member),
        "q": poset_to_obj(d.restriction) if d.restriction is not None else None,
        "attributes": sorted(m.text(ground) for m in d.attributes),
    }


def certificate_to_obj(cert: UfgCertificate) -> dict:
    ground = cert.family[0].ground
    return {
        "members": [poset_to_obj(m) for m in cert.family],
        "witness": poset_to_obj(cert.witness),
        "distinguishing": {
            str(i): sorted(a.text(ground) for a in cert.per_member[m].attributes)
            for i, m in enumerate(cert.family)
        },
    }


def catalog_to_obj(catalog: UfgCatalog) -> dict:
    return {
        "ground": list(catalog.ground.labels),
        "ufg_sets": [certificate_to_obj(c) for c in catalog.certificates()],
        "stats": {
            "count_by_size": {
                str(size): count
                for size, count in sorted(catalog.count_by_size().items())
            }
        },
    }


def _analysis_to_obj(analysis: dict) -> dict:
    out: dict[str, Any] = {"ufg": analysis["ufg"], "reason": analysis["reason"]}
    if "blockers" in analysis:
        out["blockers"] = [
            {
                "candidate": poset_to_obj(entry["candidate"]),
                "covered_without": poset_to_obj(entry["covered_without"]),
            }
            for entry in analysis["blockers"]
        ]
    return out


def violation_to_obj(v: ConnectednessViolation) -> dict:
    return {
        "family": [poset_to_obj(m) for m in v.family],
        "certificate": certificate_to_obj(v.certificate),
        "leave_one_out": [
            {
                "removed": poset_to_obj(entry["removed"]),
                "members": [poset_to_obj(m) for m in entry["members"]],
                "analysis": _analysis_to_obj(entry["analysis"]),
            }
            for entry in v.leave_one_out
        ],
    }


def connectedness_to_obj(report: ConnectednessReport) -> dict:
    return {
        "ground": list(report.ground.labels),
        "max_size": report.max_size,
        "checked": report.checked,
        "connected": report.connected,
        "violations": [violation_to_obj(v) for v in report.violations],
        "predecessors": [
            {
                "family": [poset_to_obj(m) for m in entry["family"]],
                "predecessor": [poset_to_obj(m) for m in entry["predecessor"]],
                "witness": poset_to_obj(entry["witness"]),
            }
            for entry in report.predecessors
        ],
    }


def falsification_to_obj(report: FalsificationReport) -> dict:
    return {
        "n_range": list(report.n_range),
        "budget": report.budget,
        "seed": report.seed,
        "pool_size": report.pool_size,
        "trials": report.trials,
        "families_checked": report.families_checked,
        "violation": (
            violation_to_obj(report.violation) if report.violation else None
        ),
    }


def scenario_to_obj(s: CorrigendumScenario) -> dict:
    return {
        "ground": list(s.ground.labels),
        "posets": {
            "p1": poset_to_obj(s.p1),
            "p2": poset_to_obj(s.p2),
            "p3": poset_to_obj(s.p3),
            "q": poset_to_obj(s.q),
        },
        "assertions": [
            {"name": c.name, "passed": c.passed, "detail": c.detail}
            for c in s.checks
        ],
    }


# --- parsers for everything the CLI emits ------------------------------------
#
# write(read(write(x))) must reproduce the bytes, so each parser rebuilds
# the semantic objects its serializer consumed.


def certificate_from_obj(obj: Any, where: str = "certificate") -> UfgCertificate:
    _require(isinstance(obj, dict), where, "expected an object")
    members = tuple(
        poset_from_obj(m, f"{where}.members[{i}]")
        for i, m in enumerate(obj.get("members", []))
    )
    _require(bool(members), f"{where}.members", "expected at least one member")
    witness = poset_from_obj(obj.get("witness"), f"{where}.witness")
    ground = members[0].ground
    raw = obj.get("distinguishing")
    _require(isinstance(raw, dict), f"{where}.distinguishing", "expected an object")
    per_member = {}
    for i, m in enumerate(members):
        texts = raw.get(str(i), [])
        attrs = frozenset(parse_attribute(ground, t) for t in texts)
        per_member[m] = DistinguishingSet(m, attrs, witness)
    return UfgCertificate(members, witness, per_member)


def catalog_from_obj(obj: Any, where: str = "catalog") -> UfgCatalog:
    _require(isinstance(obj, dict), where, "expected an object")
    ground = _parse_elements(obj.get("ground"), f"{where}.ground")
    certs = [
        certificate_from_obj(entry, f"{where}.ufg_sets[{i}]")
        for i, entry in enumerate(obj.get("ufg_sets", []))
    ]
    max_size = max((c.size for c in certs), default=0)
    catalog = UfgCatalog(ground, "loaded", max_size)
    for cert in certs:
        catalog.add(cert)
    return catalog


def _analysis_from_obj(obj: Any, where: str) -> dict:
    _require(isinstance(obj, dict), where, "expected an object")
    out = {"ufg": obj.get("ufg"), "reason": obj.get("reason")}
    if "blockers" in obj:
        out["blockers"] = [
            {
                "candidate": poset_from_obj(e.get("candidate"), f"{where}.blockers[{i}]"),
                "covered_without": poset_from_obj(
                    e.get("covered_without"), f"{where}.blockers[{i}]"
                ),
            }
            for i, e in enumerate(obj["blockers"])
        ]
    return out


def violation_from_obj(obj: Any, where: str = "violation") -> ConnectednessViolation:
    _require(isinstance(obj, dict), where, "expected an object")
    family = tuple(
        poset_from_obj(m, f"{where}.family[{i}]")
        for i, m in enumerate(obj.get("family", []))
    )
    cert = certificate_from_obj(obj.get("certificate"), f"{where}.certificate")
    failures = []
    for i, entry in enumerate(obj.get("leave_one_out", [])):
        spot = f"{where}.leave_one_out[{i}]"
        failures.append(
            {
                "removed": poset_from_obj(entry.get("removed"), f"{spot}.removed"),
                "members": tuple(
                    poset_from_obj(m, f"{spot}.members[{k}]")
                    for k, m in enumerate(entry.get("members", []))
                ),
                "analysis": _analysis_from_obj(entry.get("analysis"), f"{spot}.analysis"),
            }
        )
    return ConnectednessViolation(family, cert, failures)


def connectedness_from_obj(obj: Any, where: str = "report") -> ConnectednessReport:
    _require(isinstance(obj, dict), where, "expected an object")
    ground = _parse_elements(obj.get("ground"), f"{where}.ground")
    predecessors = []
    for i, entry in enumerate(obj.get("predecessors", [])):
        spot = f"{where}.predecessors[{i}]"
        predecessors.append(
            {
                "family": tuple(
                    poset_from_obj(m, spot) for m in entry.get("family", [])
                ),
                "predecessor": tuple(
                    poset_from_obj(m, spot) for m in entry.get("predecessor", [])
                ),
                "witness": poset_from_obj(entry.get("witness"), spot),
            }
        )
    violations = [
        violation_from_obj(v, f"{where}.violations[{i}]")
        for i, v in enumerate(obj.get("violations", []))
    ]
    return ConnectednessReport(
        ground=ground,
        max_size=obj.get("max_size"),
        checked=obj.get("checked"),
        connected=obj.get("connected"),
        violations=violations,
        predecessors=predecessors,
    )


def falsification_from_obj(obj: Any, where: str = "report") -> FalsificationReport:
    _require(isinstance(obj, dict), where, "expected an object")
    violation = obj.get("violation")
    return FalsificationReport(
        n_range=tuple(obj.get("n_range", [])),
        budget=obj.get("budget"),
        seed=obj.get("seed"),
        pool_size=obj.get("pool_size"),
        trials=obj.get("trials"),
        families_checked=obj.get("families_checked"),
        violation=(
            violation_from_obj(violation, f"{where}.violation")
            if violation is not None
            else None
        ),
    )


def scenario_from_obj(obj: Any, where: str = "scenario") -> CorrigendumScenario:
    _require(isinstance(obj, dict), where, "expected an object")
    ground = _parse_elements(obj.get("ground"), f"{where}.ground")
    raw = obj.get("posets")
    _require(isinstance(raw, dict), f"{where}.posets", "expected an object")
    posets = {
        name: poset_from_obj(raw.get(name), f"{where}.posets.{name}")
        for name in ("p1", "p2", "p3", "q")
    }
    checks = [
        ScenarioCheck(c["name"], c["passed"], c["detail"])
        for c in obj.get("assertions", [])
    ]
    return CorrigendumScenario(
        ground, posets["p1"], posets["p2"], posets["p3"], posets["q"], checks
    )


def count_payload_from_obj(obj: Any, where: str = "payload") -> dict:
    _require(isinstance(obj, dict), where, "expected an object")
    ground = _parse_elements(obj.get("elements"), f"{where}.elements")
    _require(isinstance(obj.get("count"), int), f"{where}.count", "expected an int")
    return {"elements": list(ground.labels), "count": obj["count"]}


def closure_payload_from_obj(obj: Any, where: str = "payload") -> dict:
    _require(isinstance(obj, dict), where, "expected an object")
    ground = _parse_elements(obj.get("elements"), f"{where}.elements")
    out: dict[str, Any] = {"elements": list(ground.labels)}
    for bound in ("lower", "upper"):
        pairs = _parse_relations(obj.get(bound), f"{where}.{bound}")
        for a, b in pairs:  # labels must exist; make_poset is too strict for upper
            ground.index(a), ground.index(b)
        out[bound] = [[a, b] for a, b in pairs]
    if "members" in obj:
        out["members"] = [
            poset_to_obj(poset_from_obj(m, f"{where}.members[{i}]"))
            for i, m in enumerate(obj["members"])
        ]
    if "oracle_checked" in obj:
        out["oracle_checked"] = bool(obj["oracle_checked"])
    return out


def verdict_payload_from_obj(obj: Any, where: str = "payload") -> dict:
    _require(isinstance(obj, dict), where, "expected an object")
    _require(isinstance(obj.get("ufg"), bool), f"{where}.ufg", "expected a bool")
    if obj["ufg"]:
        cert = certificate_from_obj(obj.get("certificate"), f"{where}.certificate")
        return {"ufg": True, "certificate": certificate_to_obj(cert)}
    return {"ufg": False, "reason": obj.get("reason")}

