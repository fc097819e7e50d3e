"""Finite first-order models under domain permutations.

A model is a finite ordered domain of distinct names together with named
finite relations.  A permutation P of the domain acts on a relation R by
relabelling:  s is in PR  iff  P^(-1)(s) is in R, i.e. PR is the pointwise
image of R.  A model is *symmetric* when some non-identity permutation
fixes it and *fully symmetric* when all do (equivalently, its permute
class is a singleton).

Two canonical sentences describe a model in the first-order language with
equality and a name for every individual:

* its *state description*: the conjunction of every signed relation atom,
  all pairwise inequalities of names, and the domain-closure clause
  "everything is one of the names" — true in exactly the model itself
  (categorical over a fixed domain);
* its *structure description*: the state description with names replaced
  by variables, existentially closed — true in exactly the permute class.

Theories are a shared-domain state space plus a selection function from
opaque condition labels to subsets of the space.  A theory is
*permutable* when every selected set is closed under the permute action
(the semantic notion; over finite domains with the space closed under
permutes it coincides with its syntactic counterpart), and has *fixity*
when every selected model is fully symmetric.  Fixity implies
permutability; gpc_check records both and the implication.

Formulas serialise to s-expressions, e.g.
``(and (rel R a1 a2) (not (rel R a2 a1)))``; models and theories to JSON.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import symgroup
from .symgroup import Permutation


class FormulaError(ValueError):
    """Malformed formula or evaluation against an incompatible model."""


class TheoryError(ValueError):
    """Structurally ill-formed theory or check precondition violation."""


@dataclass(frozen=True)
class Relation:
    """A finite relation: arity plus the set of related name tuples."""

    arity: int
    tuples: frozenset

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise ValueError(f"relation arity must be >= 1, got {self.arity}")
        object.__setattr__(self, "tuples", frozenset(tuple(t) for t in self.tuples))
        for t in self.tuples:
            if len(t) != self.arity:
                raise ValueError(f"tuple {t} does not match arity {self.arity}")


class FiniteModel:
    """An ordered finite domain of distinct names with named relations."""

    def __init__(self, domain: Sequence[str], relations: Mapping[str, Relation]):
        domain = tuple(str(a) for a in domain)
        if not domain:
            raise ValueError("empty domain")
        if len(set(domain)) != len(domain):
            raise ValueError(f"domain names must be distinct: {domain}")
        rels = {}
        members = set(domain)
        for name, rel in relations.items():
            if not isinstance(rel, Relation):
                arity, tuples = rel
                rel = Relation(arity, frozenset(tuple(t) for t in tuples))
            for t in rel.tuples:
                for entry in t:
                    if entry not in members:
                        raise ValueError(f"relatum {entry!r} of {name} outside domain")
            rels[str(name)] = rel
        self.domain = domain
        self.relations = rels
        self._key = (
            domain,
            tuple(
                (name, rels[name].arity, tuple(sorted(rels[name].tuples)))
                for name in sorted(rels)
            ),
        )

    @property
    def size(self) -> int:
        return len(self.domain)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteModel) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        rels = {name: sorted(rel.tuples) for name, rel in sorted(self.relations.items())}
        return f"FiniteModel(domain={list(self.domain)}, relations={rels})"


def pad_relation(model: FiniteModel, name: str, target_arity: int | None = None) -> FiniteModel:
    """Raise a relation's arity by allowing arbitrary trailing relata:
    the padded relation holds of (s1..sk, t...) iff the original holds of
    (s1..sk).  Default target is the domain size."""
    if name not in model.relations:
        raise ValueError(f"no relation named {name!r}")
    rel = model.relations[name]
    target = model.size if target_arity is None else target_arity
    if target < rel.arity:
        raise ValueError(f"cannot pad arity {rel.arity} down to {target}")
    extra = target - rel.arity
    padded = frozenset(
        t + tail for t in rel.tuples for tail in itertools.product(model.domain, repeat=extra)
    )
    rels = dict(model.relations)
    rels[name] = Relation(target, padded)
    return FiniteModel(model.domain, rels)


def apply_perm(perm: Permutation, model: FiniteModel) -> FiniteModel:
    """The permuted model: each relation replaced by its pointwise image
    under the domain relabelling a_k -> a_perm(k)."""
    if perm.n != model.size:
        raise ValueError(f"permutation of 1..{perm.n} on a {model.size}-element domain")
    rename = {model.domain[k - 1]: model.domain[perm(k) - 1] for k in range(1, perm.n + 1)}
    rels = {
        name: Relation(rel.arity, frozenset(tuple(rename[x] for x in t) for t in rel.tuples))
        for name, rel in model.relations.items()
    }
    return FiniteModel(model.domain, rels)


def permute_class(model: FiniteModel) -> list[FiniteModel]:
    """All distinct permutes of the model, sorted by serialised form."""
    seen = {apply_perm(p, model) for p in symgroup.all_permutations(model.size)}
    return sorted(seen, key=model_to_json)


def is_symmetric_model(model: FiniteModel) -> bool:
    """Some non-identity permutation fixes the model."""
    return any(
        apply_perm(p, model) == model
        for p in symgroup.all_permutations(model.size)
        if not p.is_identity()
    )


def is_fully_symmetric_model(model: FiniteModel) -> bool:
    """Every permutation fixes the model (singleton permute class)."""
    return all(
        apply_perm(p, model) == model for p in symgroup.all_permutations(model.size)
    )


def enumerate_models(domain: Sequence[str], arities: Mapping[str, int]) -> Iterable[FiniteModel]:
    """Every model on the domain with the given relation signature."""
    domain = tuple(domain)
    names = sorted(arities)
    pools = [
        list(itertools.product(domain, repeat=arities[name])) for name in names
    ]
    for choice in itertools.product(*(range(2 ** len(pool)) for pool in pools)):
        rels = {}
        for name, pool, mask in zip(names, pools, choice):
            rels[name] = Relation(
                arities[name],
                frozenset(t for i, t in enumerate(pool) if mask >> i & 1),
            )
        yield FiniteModel(domain, rels)


# ---------------------------------------------------------------------------
# formulas

@dataclass(frozen=True, slots=True)
class Rel:
    name: str
    args: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class Eq:
    left: str
    right: str


@dataclass(frozen=True, slots=True)
class Ne:
    left: str
    right: str


@dataclass(frozen=True, slots=True)
class Not:
    body: "Formula"


@dataclass(frozen=True, slots=True)
class And:
    parts: tuple["Formula", ...]


@dataclass(frozen=True, slots=True)
class Or:
    parts: tuple["Formula", ...]


@dataclass(frozen=True, slots=True)
class ForAll:
    var: str
    body: "Formula"


@dataclass(frozen=True, slots=True)
class Exists:
    var: str
    body: "Formula"


Formula = Rel | Eq | Ne | Not | And | Or | ForAll | Exists


def satisfies(model: FiniteModel, formula: Formula) -> bool:
    """Evaluate a closed formula in the model.

    Terms are resolved against quantifier bindings first, then as domain
    names; anything else is an unbound symbol and raises.  Quantifiers
    range over the domain.
    """
    members = set(model.domain)
    env: dict[str, str] = {}

    def term(t: str) -> str:
        got = env.get(t)
        if got is not None:
            return got
        if t in members:
            return t
        raise FormulaError(f"unbound symbol {t!r} (not a quantified variable or a name)")

    def ev(f: Formula) -> bool:
        if isinstance(f, Rel):
            rel = model.relations.get(f.name)
            if rel is None:
                raise FormulaError(f"unknown relation {f.name!r}")
            if len(f.args) != rel.arity:
                raise FormulaError(
                    f"relation {f.name!r} has arity {rel.arity}, got {len(f.args)} terms"
                )
            return tuple(term(t) for t in f.args) in rel.tuples
        if isinstance(f, Not):
            return not ev(f.body)
        if isinstance(f, And):
            return all(ev(p) for p in f.parts)
        if isinstance(f, Or):
            return any(ev(p) for p in f.parts)
        if isinstance(f, Eq):
            return term(f.left) == term(f.right)
        if isinstance(f, Ne):
            return term(f.left) != term(f.right)
        if isinstance(f, (ForAll, Exists)):
            # bindings are domain names, so None safely marks "was unbound"
            shadowed = env.get(f.var)
            try:
                if isinstance(f, ForAll):
                    for a in model.domain:
                        env[f.var] = a
                        if not ev(f.body):
                            return False
                    return True
                for a in model.domain:
                    env[f.var] = a
                    if ev(f.body):
                        return True
                return False
            finally:
                if shadowed is None:
                    env.pop(f.var, None)
                else:
                    env[f.var] = shadowed
        raise FormulaError(f"not a formula node: {f!r}")

    return ev(formula)


def _fresh(stem: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    name = stem
    while name in taken:
        name = "_" + name
    return name


def state_description(model: FiniteModel) -> Formula:
    """The conjunction true in exactly this model (over its domain):
    every relation atom signed as it holds, all pairwise name
    inequalities, and the closure clause that everything is a name."""
    parts: list[Formula] = []
    for name in sorted(model.relations):
        rel = model.relations[name]
        for t in itertools.product(model.domain, repeat=rel.arity):
            atom = Rel(name, t)
            parts.append(atom if t in rel.tuples else Not(atom))
    for i in range(model.size):
        for j in range(i + 1, model.size):
            parts.append(Ne(model.domain[i], model.domain[j]))
    y = _fresh("y", model.domain)
    parts.append(ForAll(y, Or(tuple(Eq(y, a) for a in model.domain))))
    return And(tuple(parts))


def structure_description(model: FiniteModel) -> Formula:
    """The existential closure of the state description with names turned
    into variables; true in exactly the permute class of the model."""
    to_var = {
        a: _fresh(f"x{i + 1}", model.domain) for i, a in enumerate(model.domain)
    }

    def sub(f: Formula) -> Formula:
        if isinstance(f, Rel):
            return Rel(f.name, tuple(to_var.get(t, t) for t in f.args))
        if isinstance(f, Not):
            return Not(sub(f.body))
        if isinstance(f, And):
            return And(tuple(sub(p) for p in f.parts))
        if isinstance(f, Or):
            return Or(tuple(sub(p) for p in f.parts))
        if isinstance(f, Eq):
            return Eq(to_var.get(f.left, f.left), to_var.get(f.right, f.right))
        if isinstance(f, Ne):
            return Ne(to_var.get(f.left, f.left), to_var.get(f.right, f.right))
        if isinstance(f, ForAll):
            return ForAll(f.var, sub(f.body))
        if isinstance(f, Exists):
            return Exists(f.var, sub(f.body))
        raise FormulaError(f"not a formula node: {f!r}")

    body = sub(state_description(model))
    for a in reversed(model.domain):
        body = Exists(to_var[a], body)
    return body


# ---------------------------------------------------------------------------
# s-expression form

def format_formula(f: Formula) -> str:
    if isinstance(f, Rel):
        return "(rel " + " ".join((f.name,) + f.args) + ")"
    if isinstance(f, Eq):
        return f"(= {f.left} {f.right})"
    if isinstance(f, Ne):
        return f"(!= {f.left} {f.right})"
    if isinstance(f, Not):
        return f"(not {format_formula(f.body)})"
    if isinstance(f, And):
        return "(and " + " ".join(format_formula(p) for p in f.parts) + ")"
    if isinstance(f, Or):
        return "(or " + " ".join(format_formula(p) for p in f.parts) + ")"
    if isinstance(f, ForAll):
        return f"(forall {f.var} {format_formula(f.body)})"
    if isinstance(f, Exists):
        return f"(exists {f.var} {format_formula(f.body)})"
    raise FormulaError(f"not a formula node: {f!r}")


def _tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def parse_formula(text: str) -> Formula:
    tokens = _tokenize(text)
    if not tokens:
        raise FormulaError("empty formula")
    pos = 0

    def need(what: str) -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise FormulaError(f"unexpected end of formula, wanted {what}")
        tok = tokens[pos]
        pos += 1
        return tok

    def atom_token(what: str) -> str:
        tok = need(what)
        if tok in ("(", ")"):
            raise FormulaError(f"wanted {what}, got {tok!r}")
        return tok

    def read() -> Formula:
        nonlocal pos
        tok = need("a formula")
        if tok != "(":
            raise FormulaError(f"formulas start with '(', got {tok!r}")
        head = atom_token("an operator")
        if head == "rel":
            name = atom_token("a relation name")
            args = []
            while tokens[pos : pos + 1] != [")"]:
                args.append(atom_token("a term"))
            pos += 1
            if not args:
                raise FormulaError("relation atom needs at least one term")
            return Rel(name, tuple(args))
        if head in ("=", "!="):
            left, right = atom_token("a term"), atom_token("a term")
            if need("')'") != ")":
                raise FormulaError(f"{head} takes exactly two terms")
            return Eq(left, right) if head == "=" else Ne(left, right)
        if head == "not":
            body = read()
            if need("')'") != ")":
                raise FormulaError("not takes exactly one formula")
            return Not(body)
        if head in ("and", "or"):
            parts = []
            while tokens[pos : pos + 1] != [")"]:
                parts.append(read())
            pos += 1
            if not parts:
                raise FormulaError(f"{head} needs at least one part")
            return And(tuple(parts)) if head == "and" else Or(tuple(parts))
        if head in ("forall", "exists"):
            var = atom_token("a variable")
            body = read()
            if need("')'") != ")":
                raise FormulaError(f"{head} takes a variable and one formula")
            return ForAll(var, body) if head == "forall" else Exists(var, body)
        raise FormulaError(f"unknown operator {head!r}")

    out = read()
    if pos != len(tokens):
        raise FormulaError(f"trailing tokens after formula: {tokens[pos:]}")
    return out


# ---------------------------------------------------------------------------
# theories

@dataclass(frozen=True)
class Theory:
    """A shared-domain state space with a selection function on labels."""

    space: tuple[FiniteModel, ...]
    selection: Mapping[str, tuple[int, ...]]

    def __post_init__(self) -> None:
        if not self.space:
            raise TheoryError("empty state space")
        domain = self.space[0].domain
        for m in self.space:
            if m.domain != domain:
                raise TheoryError("state space mixes domains")
        if len(set(self.space)) != len(self.space):
            raise TheoryError("duplicate models in the state space")
        object.__setattr__(
            self,
            "selection",
            {str(k): tuple(int(i) for i in v) for k, v in dict(self.selection).items()},
        )
        for label, idxs in self.selection.items():
            for i in idxs:
                if not 0 <= i < len(self.space):
                    raise TheoryError(f"selection {label!r} references model {i}")
            if len(set(idxs)) != len(idxs):
                raise TheoryError(f"selection {label!r} repeats a model")

    def selected(self, label: str) -> list[FiniteModel]:
        return [self.space[i] for i in self.selection[label]]


def is_permutable(theory: Theory) -> bool:
    """Semantic permutability: every selected set is closed under the
    permute action.  A permute of a selected model that is missing from
    the state space altogether makes the check ill-posed."""
    space = set(theory.space)
    perms = symgroup.all_permutations(theory.space[0].size)
    for label in theory.selection:
        chosen = set(theory.selected(label))
        for m in chosen:
            for p in perms:
                moved = apply_perm(p, m)
                if moved not in space:
                    raise TheoryError(
                        f"permute of a model selected by {label!r} is absent "
                        "from the state space"
                    )
                if moved not in chosen:
                    return False
    return True


def has_fixity(theory: Theory) -> bool:
    """Every model the theory ever selects is fully symmetric."""
    return all(
        is_fully_symmetric_model(m)
        for label in theory.selection
        for m in theory.selected(label)
    )


@dataclass(frozen=True)
class GpcReport:
    permutable: bool
    fixed: bool

    @property
    def consistent(self) -> bool:
        # fixity must imply permutability
        return (not self.fixed) or self.permutable


def gpc_check(theory: Theory) -> GpcReport:
    """Evaluate permutability and fixity; their relation (fixity implies
    permutability) is recorded by the report's ``consistent`` flag."""
    return GpcReport(is_permutable(theory), has_fixity(theory))


def quotient_selection(theory: Theory) -> dict[str, list[FiniteModel]]:
    """Collapse each selected set to one representative per permute class
    (the lexicographically least serialised member).  Requires a
    permutable theory, otherwise classes would leak out of the selection."""
    if not is_permutable(theory):
        raise TheoryError("quotient of a non-permutable theory is ill-defined")
    out: dict[str, list[FiniteModel]] = {}
    for label in theory.selection:
        reps = {min(permute_class(m), key=model_to_json) for m in theory.selected(label)}
        out[label] = sorted(reps, key=model_to_json)
    return out


# ---------------------------------------------------------------------------
# JSON forms

def model_to_json(model: FiniteModel) -> str:
    obj = {
        "domain": list(model.domain),
        "relations": {
            name: {
                "arity": model.relations[name].arity,
                "tuples": sorted(list(t) for t in model.relations[name].tuples),
            }
            for name in sorted(model.relations)
        },
    }
    return json.dumps(obj)


def model_from_json(text: str) -> FiniteModel:
    try:
        obj = json.loads(text)
        domain = obj["domain"]
        rels = {
            name: Relation(int(spec["arity"]), frozenset(tuple(t) for t in spec["tuples"]))
            for name, spec in obj.get("relations", {}).items()
        }
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad model JSON: {exc}") from exc
    return FiniteModel(domain, rels)


def theory_to_json(theory: Theory) -> str:
    obj = {
        "space": [json.loads(model_to_json(m)) for m in theory.space],
        "selection": {
            label: list(theory.selection[label]) for label in sorted(theory.selection)
        },
    }
    return json.dumps(obj)


def theory_from_json(text: str) -> Theory:
    try:
        obj = json.loads(text)
        space = tuple(model_from_json(json.dumps(m)) for m in obj["space"])
        selection = {str(k): tuple(v) for k, v in obj.get("selection", {}).items()}
    except TheoryError:
        raise
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad theory JSON: {exc}") from exc
    return Theory(space, selection)
