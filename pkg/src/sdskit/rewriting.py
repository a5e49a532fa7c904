"""Generic string rewriting engine.

Words are tuples of indices into a finite ordered alphabet.  A rewriting
system is a finite list of oriented rules lhs -> rhs; one-step reduction
replaces an occurrence of a lhs by the corresponding rhs.  On top of that
this module provides deterministic normalization strategies (leftmost and
rightmost), critical-branching enumeration, local-confluence checking,
bounded congruence closure, a single Knuth-Bendix completion pass, and a
lexicographic termination certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

Word = tuple[int, ...]

LEFTMOST = "leftmost"
RIGHTMOST = "rightmost"

ASPHERICAL = "aspherical"
PEIFFER = "peiffer"
OVERLAPPING = "overlapping"
CRITICAL = "critical"


@dataclass(frozen=True)
class Alphabet:
    """Finite ordered list of generator names; letters are indices into it."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("alphabet labels must be distinct")

    def __len__(self):
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def name(self, letter: int) -> str:
        return self.labels[letter]


@dataclass(frozen=True)
class Rule:
    rule_id: int
    lhs: Word
    rhs: Word

    def __post_init__(self):
        if not self.lhs:
            raise ValueError("rule lhs must be non-empty")
        if self.lhs == self.rhs:
            raise ValueError("rule lhs and rhs must differ")


@dataclass(frozen=True)
class RewritingSystem:
    alphabet: Alphabet
    rules: tuple[Rule, ...]

    def __post_init__(self):
        n = len(self.alphabet)
        seen = set()
        for rule in self.rules:
            for letter in rule.lhs + rule.rhs:
                if not 0 <= letter < n:
                    raise ValueError(f"letter {letter} out of range for alphabet of size {n}")
            if (rule.lhs, rule.rhs) in seen:
                raise ValueError(f"duplicate rule {rule.lhs} -> {rule.rhs}")
            seen.add((rule.lhs, rule.rhs))

    @classmethod
    def from_pairs(cls, alphabet: Alphabet, pairs: Iterable[tuple[Word, Word]]) -> "RewritingSystem":
        rules = tuple(Rule(i, tuple(l), tuple(r)) for i, (l, r) in enumerate(pairs))
        return cls(alphabet, rules)

    def rule(self, rule_id: int) -> Rule:
        return self.rules[rule_id]

    @property
    def pairs(self) -> set[tuple[Word, Word]]:
        return {(rule.lhs, rule.rhs) for rule in self.rules}


@dataclass(frozen=True)
class RewriteStep:
    rule_id: int
    position: int


@dataclass(frozen=True)
class RewritePath:
    source: Word
    steps: tuple[RewriteStep, ...]
    target: Word

    def __len__(self):
        return len(self.steps)


@dataclass(frozen=True)
class Branching:
    source: Word
    left: RewriteStep
    right: RewriteStep
    kind: str


@lru_cache(maxsize=None)
def _rules_by_first_letter(system: RewritingSystem) -> dict[int, tuple[Rule, ...]]:
    table: dict[int, list[Rule]] = {}
    for rule in system.rules:
        table.setdefault(rule.lhs[0], []).append(rule)
    return {k: tuple(v) for k, v in table.items()}


def apply_step(system: RewritingSystem, word: Word, step: RewriteStep) -> Word:
    """Replace the rule's lhs by its rhs at the step's position."""
    rule = system.rule(step.rule_id)
    i = step.position
    if word[i:i + len(rule.lhs)] != rule.lhs:
        raise ValueError(f"rule {rule.rule_id} does not match {word} at position {i}")
    return word[:i] + rule.rhs + word[i + len(rule.lhs):]


def replay(system: RewritingSystem, path: RewritePath) -> Word:
    """Re-apply the path's steps from its source; checks the cached target."""
    word = path.source
    for step in path.steps:
        word = apply_step(system, word, step)
    if word != path.target:
        raise ValueError("path target does not match replayed word")
    return word


def enumerate_steps(system: RewritingSystem, word: Word) -> list[RewriteStep]:
    """All one-step reductions of `word`, ordered by (position, rule id)."""
    table = _rules_by_first_letter(system)
    steps = []
    for i, letter in enumerate(word):
        for rule in table.get(letter, ()):
            if word[i:i + len(rule.lhs)] == rule.lhs:
                steps.append(RewriteStep(rule.rule_id, i))
    steps.sort(key=lambda s: (s.position, s.rule_id))
    return steps


def _first_step(system: RewritingSystem, word: Word) -> RewriteStep | None:
    table = _rules_by_first_letter(system)
    for i, letter in enumerate(word):
        best = None
        for rule in table.get(letter, ()):
            if word[i:i + len(rule.lhs)] == rule.lhs:
                if best is None or rule.rule_id < best.rule_id:
                    best = RewriteStep(rule.rule_id, i)
        if best is not None:
            return best
    return None


def _last_step(system: RewritingSystem, word: Word) -> RewriteStep | None:
    table = _rules_by_first_letter(system)
    for i in range(len(word) - 1, -1, -1):
        best = None
        for rule in table.get(word[i], ()):
            if word[i:i + len(rule.lhs)] == rule.lhs:
                if best is None or rule.rule_id > best.rule_id:
                    best = RewriteStep(rule.rule_id, i)
        if best is not None:
            return best
    return None


def is_normal_form(system: RewritingSystem, word: Word) -> bool:
    return _first_step(system, word) is None


def default_budget(word: Word) -> int:
    # Guards user-supplied systems; every system built here terminates quickly.
    return 10 * len(word) * len(word)


@dataclass(frozen=True)
class NormalizeResult:
    path: RewritePath
    reached_normal_form: bool

    @property
    def target(self) -> Word:
        return self.path.target


def normalize(system: RewritingSystem, word: Word, strategy: str = LEFTMOST,
              budget: int | None = None) -> NormalizeResult:
    """Normalize by repeatedly applying the leftmost (or rightmost) step.

    Stops at a normal form or once `budget` steps were taken; the result
    flags which of the two happened.
    """
    if budget is None:
        budget = default_budget(word)
    if budget < 0:
        raise ValueError("budget must be >= 0")
    pick = _first_step if strategy == LEFTMOST else _last_step
    if strategy not in (LEFTMOST, RIGHTMOST):
        raise ValueError(f"unknown strategy {strategy!r}")
    steps = []
    current = word
    for _ in range(budget):
        step = pick(system, current)
        if step is None:
            break
        steps.append(step)
        current = apply_step(system, current, step)
    reached = pick(system, current) is None
    return NormalizeResult(RewritePath(word, tuple(steps), current), reached)


def classify_branching(source: Word, system: RewritingSystem,
                       left: RewriteStep, right: RewriteStep) -> str:
    """Classify a local branching (two one-step reductions of one word)."""
    if left == right:
        return ASPHERICAL
    l_span = (left.position, left.position + len(system.rule(left.rule_id).lhs))
    r_span = (right.position, right.position + len(system.rule(right.rule_id).lhs))
    if l_span[1] <= r_span[0] or r_span[1] <= l_span[0]:
        return PEIFFER
    if min(l_span[0], r_span[0]) == 0 and max(l_span[1], r_span[1]) == len(source):
        return CRITICAL
    return OVERLAPPING


def critical_branchings(system: RewritingSystem) -> list[Branching]:
    """All critical branchings up to symmetry.

    Sources are either a proper suffix/prefix overlap of two lhs's or one
    lhs containing another; the two steps are ordered by (position, rule id).
    """
    found = {}
    for r1, r2 in itertools.product(system.rules, repeat=2):
        l1, l2 = r1.lhs, r2.lhs
        # proper overlap: a suffix of l1 is a prefix of l2
        for k in range(1, min(len(l1), len(l2))):
            if l1[len(l1) - k:] == l2[:k]:
                source = l1 + l2[k:]
                _record(found, system, source,
                        RewriteStep(r1.rule_id, 0),
                        RewriteStep(r2.rule_id, len(l1) - k))
        # inclusion: l2 occurs inside l1
        if len(l2) <= len(l1):
            for p in range(len(l1) - len(l2) + 1):
                if l1[p:p + len(l2)] == l2:
                    if r1.rule_id == r2.rule_id and p == 0 and len(l1) == len(l2):
                        continue
                    _record(found, system, l1,
                            RewriteStep(r1.rule_id, 0),
                            RewriteStep(r2.rule_id, p))
    order = sorted(found.values(), key=lambda b: (b.source, b.left.position,
                                                  b.left.rule_id, b.right.position,
                                                  b.right.rule_id))
    return order


def _record(found, system, source, a: RewriteStep, b: RewriteStep):
    if (a.position, a.rule_id) > (b.position, b.rule_id):
        a, b = b, a
    if a == b:
        return
    kind = classify_branching(source, system, a, b)
    if kind != CRITICAL:
        return
    found[(source, a, b)] = Branching(source, a, b, kind)


@dataclass(frozen=True)
class BranchingCheck:
    branching: Branching
    left_target: Word
    right_target: Word
    joined: bool
    budget_exhausted: bool


@dataclass(frozen=True)
class ConfluenceReport:
    checks: tuple[BranchingCheck, ...]

    @property
    def confluent(self) -> bool:
        return all(c.joined for c in self.checks)

    @property
    def failures(self) -> list[BranchingCheck]:
        return [c for c in self.checks if not c.joined]


def check_local_confluence(system: RewritingSystem, budget: int | None = None) -> ConfluenceReport:
    """Normalize both legs of every critical branching and compare targets."""
    checks = []
    for branching in critical_branchings(system):
        left = normalize(system, apply_step(system, branching.source, branching.left),
                         LEFTMOST, budget)
        right = normalize(system, apply_step(system, branching.source, branching.right),
                          LEFTMOST, budget)
        complete = left.reached_normal_form and right.reached_normal_form
        checks.append(BranchingCheck(
            branching, left.target, right.target,
            joined=complete and left.target == right.target,
            budget_exhausted=not complete))
    return ConfluenceReport(tuple(checks))


def words_up_to(alphabet_size: int, max_len: int) -> list[Word]:
    """All words of length <= max_len, shortest first, lexicographic within a length."""
    out: list[Word] = [()]
    for length in range(1, max_len + 1):
        out.extend(itertools.product(range(alphabet_size), repeat=length))
    return out


@dataclass
class CongruencePartition:
    max_len: int
    exact: bool
    representative: dict[Word, Word]

    def class_of(self, word: Word) -> frozenset[Word]:
        rep = self.representative[word]
        return frozenset(w for w, r in self.representative.items() if r == rep)

    def classes(self) -> list[frozenset[Word]]:
        by_rep: dict[Word, set[Word]] = {}
        for word, rep in self.representative.items():
            by_rep.setdefault(rep, set()).add(word)
        return [frozenset(v) for v in by_rep.values()]

    def as_partition(self) -> set[frozenset[Word]]:
        return set(self.classes())


def congruence_classes(system: RewritingSystem, max_len: int) -> CongruencePartition:
    """Partition of all words of length <= max_len under the congruence of the rules.

    Both orientations of every rule are used.  The closure is computed over
    words of length up to max_len plus one rule-length gap, so that joins
    through slightly longer internal witnesses are found when rules change
    length; the reported partition is restricted to length <= max_len.  It
    is exact when every rule preserves length and flagged as a lower bound
    otherwise.
    """
    gap = max((abs(len(r.lhs) - len(r.rhs)) for r in system.rules), default=0)
    exact = gap == 0
    work_len = max_len + gap
    words = words_up_to(len(system.alphabet), work_len)
    index = {w: i for i, w in enumerate(words)}
    parent = list(range(len(words)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    sides = [(r.lhs, r.rhs) for r in system.rules] + [(r.rhs, r.lhs) for r in system.rules if r.rhs]
    for word in words:
        i = index[word]
        for lhs, rhs in sides:
            if not lhs:
                continue
            start = 0
            while True:
                p = _find_factor(word, lhs, start)
                if p < 0:
                    break
                other = word[:p] + rhs + word[p + len(lhs):]
                if len(other) <= work_len:
                    union(i, index[other])
                start = p + 1
    rep: dict[Word, Word] = {}
    root_word: dict[int, Word] = {}
    for word in words:  # shortest-first order makes the first-seen root word minimal
        if len(word) > max_len:
            continue
        root = find(index[word])
        if root not in root_word:
            root_word[root] = word
        rep[word] = root_word[root]
    return CongruencePartition(max_len, exact, rep)


def _find_factor(word: Word, factor: Word, start: int) -> int:
    for p in range(start, len(word) - len(factor) + 1):
        if word[p:p + len(factor)] == factor:
            return p
    return -1


@dataclass(frozen=True)
class CompletionResult:
    system: RewritingSystem
    added: tuple[tuple[Word, Word], ...]
    unorientable: tuple[tuple[Word, Word], ...]
    budget_exhausted: bool


def knuth_bendix_pass(system: RewritingSystem, order_less: Callable[[Word, Word], bool],
                      budget: int | None = None) -> CompletionResult:
    """One completion pass over the critical branchings of `system`.

    Every critical branching of the input system has both legs normalized
    against the input rules plus the rules added so far; when the targets
    differ, the pair is oriented by `order_less` (larger side becomes the
    new lhs) and added.  Branchings of added rules are never considered.
    Added right-hand sides are normalized against the final rule set, so
    the outcome does not depend on the branching processing order.
    """
    branchings = critical_branchings(system)
    pairs: list[tuple[Word, Word]] = [(r.lhs, r.rhs) for r in system.rules]
    pair_set = set(pairs)
    added: list[tuple[Word, Word]] = []
    unorientable: list[tuple[Word, Word]] = []
    exhausted = False

    def current_system():
        return RewritingSystem.from_pairs(system.alphabet, pairs)

    changed = True
    while changed:
        changed = False
        cur = current_system()
        for branching in branchings:
            left = normalize(cur, apply_step(cur, branching.source, branching.left),
                             LEFTMOST, budget)
            right = normalize(cur, apply_step(cur, branching.source, branching.right),
                              LEFTMOST, budget)
            if not (left.reached_normal_form and right.reached_normal_form):
                exhausted = True
                continue
            a, b = left.target, right.target
            if a == b:
                continue
            if order_less(a, b):
                new = (b, a)
            elif order_less(b, a):
                new = (a, b)
            else:
                if (a, b) not in unorientable and (b, a) not in unorientable:
                    unorientable.append((a, b))
                continue
            if new not in pair_set:
                pairs.append(new)
                pair_set.add(new)
                added.append(new)
                changed = True
                cur = current_system()

    # normalize added right-hand sides against the final set
    final = current_system()
    cleaned: list[tuple[Word, Word]] = [(r.lhs, r.rhs) for r in system.rules]
    cleaned_added = []
    seen = set(cleaned)
    for lhs, rhs in added:
        nf = normalize(final, rhs, LEFTMOST, budget)
        if not nf.reached_normal_form:
            exhausted = True
        new = (lhs, nf.target)
        if new[0] != new[1] and new not in seen:
            cleaned.append(new)
            cleaned_added.append(new)
            seen.add(new)
    result = RewritingSystem.from_pairs(system.alphabet, cleaned)
    return CompletionResult(result, tuple(cleaned_added), tuple(unorientable), exhausted)


@dataclass(frozen=True)
class SystemFlags:
    semi_quadratic: bool
    quadratic: bool
    reduced: bool


def classify(system: RewritingSystem) -> SystemFlags:
    """Shape flags: semi-quadratic, quadratic, and reduced."""
    semi = all(len(r.lhs) == 2 and len(r.rhs) <= 2 for r in system.rules)
    quad = all(len(r.lhs) == 2 and len(r.rhs) == 2 for r in system.rules)
    reduced = True
    for rule in system.rules:
        others = RewritingSystem.from_pairs(
            system.alphabet,
            [(r.lhs, r.rhs) for r in system.rules if r.rule_id != rule.rule_id])
        if not is_normal_form(others, rule.lhs) or not is_normal_form(system, rule.rhs):
            reduced = False
            break
    return SystemFlags(semi, quad, reduced)


@dataclass(frozen=True)
class TerminationCertificate:
    passes: bool
    witness: Rule | None


def termination_certificate(system: RewritingSystem, measure: Callable[[Word], int],
                            letter_less: Callable[[int, int], bool]) -> TerminationCertificate:
    """Check compatibility of the rules with a lexicographic order.

    For each rule the measure must not increase, and whenever it ties the
    first letter of the rhs must be strictly below the first letter of the
    lhs under `letter_less`.
    """
    for rule in system.rules:
        ml, mr = measure(rule.lhs), measure(rule.rhs)
        if mr > ml:
            return TerminationCertificate(False, rule)
        if mr == ml:
            if not rule.rhs or not letter_less(rule.rhs[0], rule.lhs[0]):
                return TerminationCertificate(False, rule)
    return TerminationCertificate(True, None)


def system_to_json(system: RewritingSystem) -> dict:
    return {
        "alphabet": list(system.alphabet.labels),
        "rules": [{"lhs": list(r.lhs), "rhs": list(r.rhs)} for r in system.rules],
    }


def system_from_json(data: dict) -> RewritingSystem:
    alphabet = Alphabet(tuple(data["alphabet"]))
    pairs = [(tuple(r["lhs"]), tuple(r["rhs"])) for r in data["rules"]]
    return RewritingSystem.from_pairs(alphabet, pairs)


def parse_word(alphabet: Alphabet, text: str) -> Word:
    """Parse the space-separated generator-name format."""
    text = text.strip()
    if not text:
        return ()
    return tuple(alphabet.index(name) for name in text.split())


def format_word(alphabet: Alphabet, word: Word) -> str:
    return " ".join(alphabet.name(letter) for letter in word)
