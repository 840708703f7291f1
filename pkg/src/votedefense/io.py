"""Election file serialization.

The on-disk form is JSON with two fields: ``candidates`` (list of names)
and ``groups`` (list of groups, each a list of ``{order, count}`` bundles
where orders reference candidates by name).  Groups written as an object
``{"label": ..., "bundles": [...]}`` keep their label; the plain list form
is emitted whenever a group has no label.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .core import Election, VoteBundle, VoterGroup, election_from_names


class ElectionFormatError(ValueError):
    """Malformed election document; the message carries the JSON path."""


def serialize_election(election: Election) -> str:
    names = [c.name for c in election.candidates]
    groups: list[Any] = []
    for group in election.groups:
        bundles = [
            {"order": [names[c] for c in b.order.ranking], "count": b.count}
            for b in group.bundles
        ]
        if group.label is None:
            groups.append(bundles)
        else:
            groups.append({"label": group.label, "bundles": bundles})
    doc = {"candidates": names, "groups": groups}
    return json.dumps(doc, indent=2) + "\n"


def _parse_bundle(raw: Any, index: dict[str, int], where: str) -> VoteBundle:
    if not isinstance(raw, dict) or "order" not in raw or "count" not in raw:
        raise ElectionFormatError(f"{where}: expected an object with 'order' and 'count'")
    order_names = raw["order"]
    if not isinstance(order_names, list):
        raise ElectionFormatError(f"{where}.order: expected a list of candidate names")
    ranking = []
    for name in order_names:
        if name not in index:
            raise ElectionFormatError(f"{where}.order: unknown candidate {name!r}")
        ranking.append(index[name])
    if sorted(ranking) != list(range(len(index))):
        raise ElectionFormatError(
            f"{where}.order: not a permutation of all {len(index)} candidates"
        )
    count = raw["count"]
    if not isinstance(count, int) or isinstance(count, bool) or count < 1:
        raise ElectionFormatError(f"{where}.count: expected a positive integer")
    from .core import LinearOrder

    return VoteBundle(LinearOrder(tuple(ranking)), count)


def _parse_group(raw: Any, index: dict[str, int], where: str) -> VoterGroup:
    label = None
    if isinstance(raw, dict):
        label = raw.get("label")
        if label is not None and not isinstance(label, str):
            raise ElectionFormatError(f"{where}.label: expected a string")
        raw = raw.get("bundles")
    if not isinstance(raw, list):
        raise ElectionFormatError(f"{where}: expected a list of bundles")
    bundles = [
        _parse_bundle(b, index, f"{where}[{i}]") for i, b in enumerate(raw)
    ]
    orders = [b.order.ranking for b in bundles]
    if len(set(orders)) != len(orders):
        raise ElectionFormatError(f"{where}: duplicate ballot orders in one group")
    return VoterGroup(tuple(bundles), label)


def parse_election(text: str) -> Election:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ElectionFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ElectionFormatError("top level: expected a JSON object")
    names = doc.get("candidates")
    if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
        raise ElectionFormatError("candidates: expected a list of strings")
    if len(set(names)) != len(names):
        raise ElectionFormatError("candidates: names must be unique")
    raw_groups = doc.get("groups")
    if not isinstance(raw_groups, list) or not raw_groups:
        raise ElectionFormatError("groups: expected a non-empty list")
    index = {n: i for i, n in enumerate(names)}
    groups = [
        _parse_group(g, index, f"groups[{i}]") for i, g in enumerate(raw_groups)
    ]
    return election_from_names(names, groups)


def save_election(election: Election, path: str | Path) -> None:
    Path(path).write_text(serialize_election(election), encoding="utf-8")


def load_election(path: str | Path) -> Election:
    return parse_election(Path(path).read_text(encoding="utf-8"))
