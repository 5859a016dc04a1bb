"""The category of fractions by zig-zag word rewriting and bounded congruence closure.

A zig-zag word is a sequence of signed letters: ``(m, FWD)`` traverses the
morphism m from source to target, ``(m, BWD)`` traverses a marked morphism
backwards.  Word equality in the localization is undecidable in general, so
class structure is computed by congruence closure over all well-formed words
up to an explicit length bound, with an honest ``complete``/``truncated``
status.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fincat import FinCategory, Functor, InputError, WeakEquivalenceClass, validate_category

FWD = "+"
BWD = "-"


@dataclass(frozen=True)
class SignedMorphism:
    morphism: str
    direction: str  # FWD or BWD

    def __post_init__(self):
        if self.direction not in (FWD, BWD):
            raise InputError(f"bad direction {self.direction!r}")


@dataclass(frozen=True)
class ZigZag:
    """A composable word of signed morphisms from ``source`` to ``target``.

    The empty word is the identity and requires source == target.
    """

    source: str
    target: str
    word: tuple  # of SignedMorphism

    def __len__(self):
        return len(self.word)


def letter_endpoints(cat, letter):
    s, t = cat.morphisms[letter.morphism]
    return (s, t) if letter.direction == FWD else (t, s)


def validate_zigzag(cat, weq, z):
    """Report of well-formedness violations for a zig-zag."""
    report = []
    if not z.word:
        if z.source != z.target:
            report.append("empty word with distinct endpoints")
        return report
    at = z.source
    for k, letter in enumerate(z.word):
        if letter.morphism not in cat.morphisms:
            report.append(f"letter {k} names unknown morphism {letter.morphism!r}")
            return report
        if letter.direction == BWD and letter.morphism not in weq:
            report.append(f"letter {k} traverses unmarked {letter.morphism!r} backwards")
        s, t = letter_endpoints(cat, letter)
        if s != at:
            report.append(f"letter {k} starts at {s!r}, expected {at!r}")
        at = t
    if at != z.target:
        report.append(f"word ends at {at!r}, expected {z.target!r}")
    return report


def _rewrite_at(cat, weq, word, k):
    """The single-step rewrite applying at position k, or None.

    Rules, each strictly shortening:
      (a) adjacent forward letters compose;
      (b) identity letters are deleted, forwards or backwards (the backward
          case is forced by the two-sided-inverse relation);
      (c) adjacent (s+, s-) or (s-, s+) pairs with s marked are deleted;
      (d) adjacent backward letters compose when the composite is marked (a
          derived relation: inverses compose contravariantly).
    """
    x = word[k]
    if cat.is_identity(x.morphism):
        return word[:k] + word[k + 1:]
    if k + 1 < len(word):
        y = word[k + 1]
        if x.direction == FWD and y.direction == FWD:
            gf = cat.compose_or_none(y.morphism, x.morphism)
            if gf is not None:
                return word[:k] + (SignedMorphism(gf, FWD),) + word[k + 2:]
        if x.morphism == y.morphism and x.direction != y.direction and x.morphism in weq:
            return word[:k] + word[k + 2:]
        if x.direction == BWD and y.direction == BWD:
            # x traverses tgt(x)->src(x), then y traverses tgt(y)->src(y)
            # with src(x) == tgt(y); the composite x∘y runs src(y) -> tgt(x)
            comp = cat.compose_or_none(x.morphism, y.morphism)
            if comp is not None and comp in weq:
                return word[:k] + (SignedMorphism(comp, BWD),) + word[k + 2:]
    return None


def normalize(cat, weq, z):
    """Exhaustively rewrite, left-to-right innermost-first, to an irreducible word."""
    word = tuple(z.word)
    changed = True
    while changed:
        changed = False
        for k in range(len(word)):
            out = _rewrite_at(cat, weq, word, k)
            if out is not None:
                word = out
                changed = True
                break
    return ZigZag(z.source, z.target, word)


def _single_step_rewrites(cat, weq, word):
    for k in range(len(word)):
        out = _rewrite_at(cat, weq, word, k)
        if out is not None:
            yield out


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


COMPLETE = "complete"
TRUNCATED = "truncated"


class FractionsCategory:
    """Classes of zig-zag words up to the bounded congruence, per ordered object pair.

    ``classes`` maps class id -> sorted tuple of member words (words are tuples
    of (morphism, direction) pairs); canonical representatives are minimal by
    (length, lexicographic) and irreducible.  When ``status`` is ``complete``
    the class composition table is total and ``as_category()`` yields a valid
    FinCategory presentation.
    """

    def __init__(self, cat, weq, bound):
        self.cat = cat
        self.weq = weq
        self.bound = bound
        self._build()

    # -- construction ------------------------------------------------------

    def _letters(self):
        letters = [SignedMorphism(m, FWD) for m in sorted(self.cat.morphisms)]
        letters += [SignedMorphism(m, BWD) for m in sorted(self.weq.members)]
        return letters

    def _build(self):
        cat, weq, bound = self.cat, self.weq, self.bound
        letters = self._letters()
        by_source = {}
        for letter in letters:
            s, _ = letter_endpoints(cat, letter)
            by_source.setdefault(s, []).append(letter)

        # all well-formed words of length <= bound, plus empty words per object
        words = {x: [((), x, x)] for x in cat.objects}  # source -> [(word, src, tgt)]
        frontier = [((), x, x) for x in cat.objects]
        all_words = list(frontier)
        for _ in range(bound):
            nxt = []
            for word, src, tgt in frontier:
                for letter in by_source.get(tgt, ()):
                    _, t2 = letter_endpoints(cat, letter)
                    entry = (word + ((letter.morphism, letter.direction),), src, t2)
                    nxt.append(entry)
            all_words.extend(nxt)
            frontier = nxt

        uf = _UnionFind()
        for word, src, tgt in all_words:
            uf.add((src, tgt, word))
        # congruence closure: union every word with each of its single-step
        # rewrites; a rewrite inside a context is a rewrite of the whole word,
        # so one pass over all positions of all words generates the congruence
        # restricted to the bounded carrier.
        for word, src, tgt in all_words:
            z = tuple(SignedMorphism(m, d) for m, d in word)
            for out in _single_step_rewrites(cat, weq, z):
                key = (src, tgt, tuple((l.morphism, l.direction) for l in out))
                uf.add(key)
                uf.union((src, tgt, word), key)

        groups = {}
        for word, src, tgt in all_words:
            groups.setdefault(uf.find((src, tgt, word)), []).append((src, tgt, word))

        def word_key(entry):
            return (len(entry[2]), entry[2])

        self.classes = {}
        self.class_of_word = {}
        reps = []
        for members in groups.values():
            members.sort(key=word_key)
            src, tgt, rep = members[0]
            reps.append((src, tgt, rep, members))
        reps.sort(key=lambda r: (r[0], r[1], len(r[2]), r[2]))
        for idx, (src, tgt, rep, members) in enumerate(reps):
            cid = f"w{idx}"
            self.classes[cid] = {
                "source": src,
                "target": tgt,
                "representative": rep,
                "members": tuple(m[2] for m in members),
            }
            for _, _, w in members:
                self.class_of_word[(src, tgt, w)] = cid

        # composition table on classes, by composing canonical representatives
        self.compose_table = {}
        self.status = COMPLETE
        self.status_detail = ""
        for g, ginfo in self.classes.items():
            for f, finfo in self.classes.items():
                if finfo["target"] != ginfo["source"]:
                    continue
                word = finfo["representative"] + ginfo["representative"]
                z = ZigZag(finfo["source"], ginfo["target"],
                           tuple(SignedMorphism(m, d) for m, d in word))
                nz = normalize(cat, weq, z)
                key = (nz.source, nz.target,
                       tuple((l.morphism, l.direction) for l in nz.word))
                if len(nz.word) > bound or key not in self.class_of_word:
                    self.status = TRUNCATED
                    self.status_detail = (
                        f"composite of {f} and {g} normalizes to length "
                        f"{len(nz.word)} > classified range at bound {bound}")
                    self.compose_table = {}
                    return
                self.compose_table[(g, f)] = self.class_of_word[key]

        # certify well-definedness of class composition: the class table must
        # be a category, and every carrier word must evaluate letterwise
        # through the table to its own class.  Failure means the bound merged
        # too little, which is a truncation symptom, not an error.
        presentation_report = validate_category(self.as_category())
        if presentation_report:
            self.status = TRUNCATED
            self.status_detail = f"class table is not a category: {presentation_report[0]}"
            self.compose_table = {}
            return
        for (src, tgt, word), cid in self.class_of_word.items():
            if self.eval_word(src, word) != cid:
                self.status = TRUNCATED
                self.status_detail = (
                    f"word {word} evaluates outside its class at bound {bound}")
                self.compose_table = {}
                return

    # -- queries -----------------------------------------------------------

    def objects(self):
        return self.cat.objects

    def hom_classes(self, x, y):
        return sorted(c for c, info in self.classes.items()
                      if info["source"] == x and info["target"] == y)

    def class_of(self, z):
        nz = normalize(self.cat, self.weq, z)
        key = (nz.source, nz.target,
               tuple((l.morphism, l.direction) for l in nz.word))
        return self.class_of_word.get(key)

    def identity_class(self, x):
        return self.class_of_word[(x, x, ())]

    def unary_class(self, m, direction=FWD):
        s, t = letter_endpoints(self.cat, SignedMorphism(m, direction))
        return self.class_of(ZigZag(s, t, (SignedMorphism(m, direction),)))

    def compose_classes(self, g, f):
        if self.status != COMPLETE:
            raise InputError("class composition requires a complete localization")
        return self.compose_table[(g, f)]

    def eval_word(self, source, word):
        """The class of an arbitrary zig-zag word, folded letter by letter.

        Works for words of any length by composing unary classes through the
        class composition table; requires a complete localization.
        """
        if self.status != COMPLETE:
            raise InputError("eval_word requires a complete localization")
        if not hasattr(self, "_unary_cache"):
            cache = {}
            for m in self.cat.morphisms:
                cache[(m, FWD)] = self.unary_class(m, FWD)
            for m in self.weq.members:
                cache[(m, BWD)] = self.unary_class(m, BWD)
            self._unary_cache = cache
        acc = self.identity_class(source)
        for letter in word:
            acc = self.compose_table[(self._unary_cache[letter], acc)]
        return acc

    def as_category(self):
        """The localization as a FinCategory with class ids as morphisms."""
        if self.status != COMPLETE:
            raise InputError("truncated localization has no total composition")
        morphisms = {c: (info["source"], info["target"])
                     for c, info in self.classes.items()}
        identities = {x: self.identity_class(x) for x in self.cat.objects}
        return FinCategory(self.cat.objects, morphisms, dict(self.compose_table),
                           identities)


def build_fractions(cat, weq, bound):
    """Construct the bounded localization of (cat, weq).

    Truncation is reported in ``status``, never silently.
    """
    if not isinstance(weq, WeakEquivalenceClass):
        weq = WeakEquivalenceClass(cat, frozenset(weq))
    if bound < 1:
        raise InputError("bound must be >= 1")
    return FractionsCategory(cat, weq, bound)


def localization_functor(frac):
    """The canonical functor into the localization, on the class presentation.

    Every marked morphism maps to an isomorphism of the fractions category.
    """
    if frac.status != COMPLETE:
        raise InputError("localization functor requires a complete localization")
    target = frac.as_category()
    object_map = {x: x for x in frac.cat.objects}
    morphism_map = {m: frac.unary_class(m) for m in frac.cat.morphisms}
    return Functor(frac.cat, target, object_map, morphism_map)


@dataclass
class UniversalPropertyResult:
    extension: Functor | None = None
    counterexample: str | None = None  # a marked morphism whose image is not invertible

    @property
    def inverts(self):
        return self.counterexample is None


def check_universal_property(frac, g):
    """Extend g: C -> M along the localization, or exhibit why none exists.

    If g inverts every marked morphism, returns the unique extension (backward
    letters map to the chosen least-id inverses) with its functoriality
    verified exhaustively over the class composition table; otherwise returns
    a marked morphism with non-invertible image.
    """
    if frac.status != COMPLETE:
        raise InputError("universal property check requires a complete localization")
    cat, weq, target = frac.cat, frac.weq, g.target
    inverses = {}
    for w in sorted(weq.members):
        inv = target.inverse(g.on_morphism(w))
        if inv is None:
            return UniversalPropertyResult(counterexample=w)
        inverses[w] = inv

    def eval_word(source, word):
        at = g.on_object(source)
        acc = target.identity(at)
        for m, d in word:
            step = g.on_morphism(m) if d == FWD else inverses[m]
            acc = target.compose(step, acc)
        return acc

    presentation = frac.as_category()
    object_map = {x: g.on_object(x) for x in cat.objects}
    morphism_map = {}
    for cid, info in frac.classes.items():
        image = eval_word(info["source"], info["representative"])
        # well-definedness: every member of the class evaluates identically
        for member in info["members"]:
            if eval_word(info["source"], member) != image:
                raise InputError(
                    f"class {cid} evaluates inconsistently; localization too coarse")
        morphism_map[cid] = image
    extension = Functor(presentation, target, object_map, morphism_map)
    problems = extension.validate()
    if problems:
        raise InputError(f"extension fails functoriality: {problems[:3]}")
    # the extension restricts along the localization functor to g
    iota = localization_functor(frac)
    for m in cat.morphisms:
        if morphism_map[iota.on_morphism(m)] != g.on_morphism(m):
            raise InputError(f"extension does not restrict to the given functor at {m}")
    return UniversalPropertyResult(extension=extension)
