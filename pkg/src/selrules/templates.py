"""Inclusive rule templates such as ``any* => class``.

An item's class is the part of its label before the first ``=`` (so
``odor=none`` belongs to class ``odor``); a label without ``=`` is its own
class.  ``any`` matches every class.

Template syntax::

    <classes>[*] => <classes>

where ``<classes>`` is one or more class names separated by ``,`` or ``|``.
Without ``*`` the LHS must consist of exactly one item; with ``*`` it may
hold any positive number of items, each from one of the listed classes.
The RHS always matches exactly one item.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence, TypeVar

from .errors import TemplateSyntaxError
from .rulegen import RuleRow, RuleSet

log = logging.getLogger(__name__)

ANY = "any"
_NAME = re.compile(r"[^\s,|*]+")


def item_class(label: str) -> str:
    return label.split("=", 1)[0]


@dataclass(frozen=True)
class RuleTemplate:
    lhs_classes: frozenset[str] | None  # None means any class
    lhs_star: bool
    rhs_classes: frozenset[str] | None
    text: str = ""
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def matches(self, lhs: Sequence[str], rhs: str) -> bool:
        if self.rhs_classes is not None and item_class(rhs) not in self.rhs_classes:
            return False
        if not lhs or (not self.lhs_star and len(lhs) != 1):
            return False
        if self.lhs_classes is None:
            return True
        return all(item_class(label) in self.lhs_classes for label in lhs)


def _parse_side(text: str, offset: int, full: str, allow_star: bool) -> tuple[frozenset[str] | None, bool]:
    body = text.rstrip()
    star = body.endswith("*")
    if star:
        if not allow_star:
            raise TemplateSyntaxError("'*' is not allowed on the right-hand side", full, offset + len(body) - 1)
        body = body[:-1]
    names = []
    pos = 0
    while True:
        while pos < len(body) and body[pos].isspace():
            pos += 1
        match = _NAME.match(body, pos)
        if match is None:
            # at the end of the side, point past any trailing blanks
            where = len(text) if pos == len(body) else pos
            raise TemplateSyntaxError("expected a class name", full, offset + where)
        names.append(match.group())
        pos = match.end()
        while pos < len(body) and body[pos].isspace():
            pos += 1
        if pos == len(body):
            break
        if body[pos] not in ",|":
            raise TemplateSyntaxError(f"unexpected {body[pos]!r}", full, offset + pos)
        pos += 1
    if ANY in names:
        return None, star
    return frozenset(names), star


def parse_template(text: str, known_classes: Iterable[str] | None = None) -> RuleTemplate:
    """Parse ``"<lhs> => <rhs>"``; see the module docstring for the syntax.

    When ``known_classes`` is given, class names outside it are kept (they
    just never match) and reported in ``template.warnings``.
    """
    arrow = text.find("=>")
    if arrow < 0:
        raise TemplateSyntaxError("missing '=>'", text, len(text))
    if text.find("=>", arrow + 2) >= 0:
        raise TemplateSyntaxError("more than one '=>'", text, text.find("=>", arrow + 2))
    lhs, lhs_star = _parse_side(text[:arrow], 0, text, allow_star=True)
    rhs, _ = _parse_side(text[arrow + 2 :], arrow + 2, text, allow_star=False)
    warnings = []
    if known_classes is not None:
        known = set(known_classes)
        for side in (lhs, rhs):
            for name in sorted(side or ()):
                if name not in known:
                    warnings.append(f"template class {name!r} matches no item")
    for w in warnings:
        log.warning(w)
    return RuleTemplate(lhs, lhs_star, rhs, text.strip(), tuple(warnings))


def filter_rules(rules: RuleSet, template: RuleTemplate) -> RuleSet:
    """Rules whose LHS and RHS classes fit ``template``, in input order."""
    kept = [r for r in rules if template.matches(*rules.labels(r))]
    return replace(rules, rules=kept, notes=list(rules.notes))


Row = TypeVar("Row", bound=RuleRow)


def filter_rows(rows: Iterable[Row], template: RuleTemplate) -> list[Row]:
    """Same as :func:`filter_rules` for rows read back from a rule file."""
    return [row for row in rows if template.matches(row.lhs, row.rhs)]
