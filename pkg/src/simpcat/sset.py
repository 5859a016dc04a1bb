"""Truncated finite simplicial sets: cell constructors, nerves, (co)limits,
double mapping cylinders, path components and edge-path groups.

A simplicial set is stored levelwise up to an explicit truncation dimension,
including degenerate simplices, so that the simplicial identities and
levelwise (co)limits are direct to compute.  Every operation states its output
truncation; nothing is coskeletally assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fincat import InputError, ResourceBudgetError


class SSet:
    """A simplicial set truncated at dimension ``dim``.

    ``levels[n]`` is a sorted tuple of simplex ids; ``faces[(n, i)]`` and
    ``degeneracies[(n, j)]`` are dicts implementing d_i: X_n -> X_{n-1} and
    s_j: X_n -> X_{n+1}.
    """

    def __init__(self, dim, levels, faces, degeneracies):
        if dim < 0:
            raise InputError("truncation dimension must be >= 0")
        self.dim = dim
        self.levels = {n: tuple(sorted(levels.get(n, ()))) for n in range(dim + 1)}
        self.faces = {k: dict(v) for k, v in faces.items()}
        self.degeneracies = {k: dict(v) for k, v in degeneracies.items()}

    def simplices(self, n):
        return self.levels.get(n, ())

    def face(self, n, i, x):
        return self.faces[(n, i)][x]

    def deg(self, n, j, x):
        return self.degeneracies[(n, j)][x]

    def face_tuple(self, n, x):
        return tuple(self.faces[(n, i)][x] for i in range(n + 1))

    def nondegenerate(self, n):
        """Simplices of X_n not in the image of any degeneracy."""
        if n == 0:
            return tuple(self.levels[0])
        degenerate = set()
        for j in range(n):
            degenerate.update(self.degeneracies[(n - 1, j)].values())
        return tuple(x for x in self.levels[n] if x not in degenerate)

    def degeneracy_presentations(self, n, x):
        """All (j, y) with s_j(y) = x, for x in X_n."""
        if n == 0:
            return []
        return [(j, y) for j in range(n)
                for y, im in self.degeneracies[(n - 1, j)].items() if im == x]

    def validate(self):
        """Report of violated simplicial axioms; empty iff well formed."""
        report = []
        for n in range(1, self.dim + 1):
            for i in range(n + 1):
                table = self.faces.get((n, i))
                if table is None:
                    report.append(f"missing face table d_{i} at level {n}")
                    continue
                if set(table) != set(self.levels[n]):
                    report.append(f"face d_{i} at level {n} has wrong domain")
                    continue
                bad = [x for x, y in table.items() if y not in set(self.levels[n - 1])]
                if bad:
                    report.append(f"face d_{i} at level {n} maps {bad[0]} outside X_{n-1}")
        for n in range(self.dim):
            for j in range(n + 1):
                table = self.degeneracies.get((n, j))
                if table is None:
                    report.append(f"missing degeneracy table s_{j} at level {n}")
                    continue
                if set(table) != set(self.levels[n]):
                    report.append(f"degeneracy s_{j} at level {n} has wrong domain")
                    continue
                bad = [x for x, y in table.items() if y not in set(self.levels[n + 1])]
                if bad:
                    report.append(f"degeneracy s_{j} at level {n} maps outside X_{n+1}")
                vals = list(table.values())
                if len(vals) != len(set(vals)):
                    report.append(f"degeneracy s_{j} at level {n} is not injective")
        if report:
            return report

        for n in range(2, self.dim + 1):
            for x in self.levels[n]:
                for j in range(n + 1):
                    for i in range(j):
                        left = self.face(n - 1, i, self.face(n, j, x))
                        right = self.face(n - 1, j - 1, self.face(n, i, x))
                        if left != right:
                            report.append(
                                f"d_{i} d_{j} != d_{j-1} d_{i} at {x} (level {n})")
        for n in range(self.dim - 1):
            for x in self.levels[n]:
                for j in range(n + 1):
                    for i in range(j + 1):
                        left = self.deg(n + 1, i, self.deg(n, j, x))
                        right = self.deg(n + 1, j + 1, self.deg(n, i, x))
                        if left != right:
                            report.append(
                                f"s_{i} s_{j} != s_{j+1} s_{i} at {x} (level {n})")
        for n in range(self.dim):
            for x in self.levels[n]:
                for j in range(n + 1):
                    sx = self.deg(n, j, x)
                    for i in range(n + 2):
                        got = self.face(n + 1, i, sx)
                        if i < j:
                            want = self.deg(n - 1, j - 1, self.face(n, i, x)) if n >= 1 else None
                        elif i in (j, j + 1):
                            want = x
                        else:
                            want = self.deg(n - 1, j, self.face(n, i - 1, x)) if n >= 1 else None
                        if want is not None and got != want:
                            report.append(
                                f"d_{i} s_{j} identity fails at {x} (level {n})")
        return report

    def level_sizes(self):
        return tuple(len(self.levels[n]) for n in range(self.dim + 1))

    def __repr__(self):
        return f"SSet(dim={self.dim}, sizes={self.level_sizes()})"


class SimplicialMap:
    """A levelwise map of simplicial sets of common truncation."""

    def __init__(self, source, target, levels):
        self.source = source
        self.target = target
        self.levels = {n: dict(levels.get(n, {})) for n in range(source.dim + 1)}

    def __call__(self, n, x):
        return self.levels[n][x]

    def validate(self):
        report = []
        if self.source.dim != self.target.dim:
            report.append("source and target truncations differ")
            return report
        for n in range(self.source.dim + 1):
            table = self.levels.get(n, {})
            if set(table) != set(self.source.simplices(n)):
                report.append(f"level {n} map has wrong domain")
                return report
            tgt = set(self.target.simplices(n))
            for x, y in table.items():
                if y not in tgt:
                    report.append(f"level {n} maps {x} outside the target")
                    return report
        for n in range(1, self.source.dim + 1):
            for x in self.source.simplices(n):
                for i in range(n + 1):
                    if self.levels[n - 1][self.source.face(n, i, x)] != \
                            self.target.face(n, i, self.levels[n][x]):
                        report.append(f"does not commute with d_{i} at {x} (level {n})")
        for n in range(self.source.dim):
            for x in self.source.simplices(n):
                for j in range(n + 1):
                    if self.levels[n + 1][self.source.deg(n, j, x)] != \
                            self.target.deg(n, j, self.levels[n][x]):
                        report.append(f"does not commute with s_{j} at {x} (level {n})")
        return report

    def then(self, other):
        """other ∘ self."""
        return SimplicialMap(self.source, other.target,
                             {n: {x: other.levels[n][y] for x, y in t.items()}
                              for n, t in self.levels.items()})

    @staticmethod
    def identity(x):
        return SimplicialMap(x, x, {n: {s: s for s in x.simplices(n)}
                                    for n in range(x.dim + 1)})

    def __repr__(self):
        return f"SimplicialMap({self.source!r} -> {self.target!r})"


# -- standard cells ----------------------------------------------------------

def _monotone_maps(m, n):
    """All monotone maps [m] -> [n] as value tuples."""
    out = []

    def rec(prefix, lo):
        if len(prefix) == m + 1:
            out.append(tuple(prefix))
            return
        for v in range(lo, n + 1):
            rec(prefix + [v], v)

    rec([], 0)
    return out


def _vals_id(vals):
    return "".join(str(v) for v in vals)


def _simplex_like(n, d, keep):
    """Simplicial subsets of Δⁿ selected by a predicate on value tuples."""
    levels = {}
    faces = {}
    degeneracies = {}
    table = {}
    for m in range(d + 1):
        sims = [v for v in _monotone_maps(m, n) if keep(v)]
        levels[m] = [_vals_id(v) for v in sims]
        table[m] = {_vals_id(v): v for v in sims}
    for m in range(1, d + 1):
        for i in range(m + 1):
            faces[(m, i)] = {x: _vals_id(v[:i] + v[i + 1:])
                             for x, v in table[m].items()}
    for m in range(d):
        for j in range(m + 1):
            degeneracies[(m, j)] = {x: _vals_id(v[:j + 1] + v[j:])
                                    for x, v in table[m].items()}
    return SSet(d, levels, faces, degeneracies)


def standard_simplex(n, d):
    """Δⁿ truncated at d >= n; m-simplices are monotone maps [m] -> [n]."""
    if n < 0 or d < n:
        raise InputError("need 0 <= n <= d")
    return _simplex_like(n, d, lambda v: True)


def boundary(n, d):
    """∂Δⁿ: the simplices of Δⁿ that are not surjective onto [n]."""
    if n < 0 or d < n:
        raise InputError("need 0 <= n <= d")
    full = set(range(n + 1))
    return _simplex_like(n, d, lambda v: set(v) != full)


def horn(n, k, d):
    """Λⁿₖ: simplices whose image together with k misses some vertex of [n]."""
    if n < 1 or k < 0 or k > n or d < n:
        raise InputError("need 0 <= k <= n <= d and n >= 1")
    full = set(range(n + 1))
    return _simplex_like(n, d, lambda v: set(v) | {k} != full)


def simplex_inclusion(sub, whole):
    """The evident inclusion between two subobjects of the same Δⁿ."""
    return SimplicialMap(sub, whole,
                         {m: {x: x for x in sub.simplices(m)}
                          for m in range(sub.dim + 1)})


# -- nerves ------------------------------------------------------------------

def nerve(cat, d):
    """The nerve of a finite category: n-simplices are composable n-chains.

    Ids: a 0-simplex is the object id, a 1-simplex the morphism id, an
    n-simplex the ';'-joined chain.  Degenerate edges are identity morphisms.
    """
    chains = {0: [(x,) for x in cat.objects]}
    for n in range(1, d + 1):
        level = []
        if n == 1:
            level = [(m,) for m in sorted(cat.morphisms)]
        else:
            for chain in chains[n - 1]:
                last_tgt = cat.tgt(chain[-1])
                for m in sorted(cat.morphisms):
                    if cat.src(m) == last_tgt:
                        level.append(chain + (m,))
        chains[n] = level

    def cid(n, chain):
        if n == 0:
            return chain[0]
        return ";".join(chain)

    levels = {n: [cid(n, c) for c in chains[n]] for n in range(d + 1)}
    faces = {}
    degeneracies = {}
    for n in range(1, d + 1):
        for i in range(n + 1):
            table = {}
            for chain in chains[n]:
                if n == 1:
                    m = chain[0]
                    out = (cat.tgt(m),) if i == 0 else (cat.src(m),)
                elif i == 0:
                    out = chain[1:]
                elif i == n:
                    out = chain[:-1]
                else:
                    out = chain[:i - 1] + (cat.compose(chain[i], chain[i - 1]),) + chain[i + 1:]
                table[cid(n, chain)] = cid(n - 1, out)
            faces[(n, i)] = table
    for n in range(d):
        for j in range(n + 1):
            table = {}
            for chain in chains[n]:
                if n == 0:
                    out = (cat.identity(chain[0]),)
                else:
                    # insert the identity at vertex j of the chain
                    objs = [cat.src(chain[0])] + [cat.tgt(m) for m in chain]
                    out = chain[:j] + (cat.identity(objs[j]),) + chain[j:]
                table[cid(n, chain)] = cid(n + 1, out)
            degeneracies[(n, j)] = table
    return SSet(d, levels, faces, degeneracies)


# -- levelwise (co)limits ----------------------------------------------------

def _pair(x, y):
    return f"({x}|{y})"


def product(x, y):
    """The levelwise product; truncation is the minimum of the inputs."""
    d = min(x.dim, y.dim)
    levels = {n: [_pair(a, b) for a in x.simplices(n) for b in y.simplices(n)]
              for n in range(d + 1)}
    faces = {}
    degeneracies = {}
    for n in range(1, d + 1):
        for i in range(n + 1):
            faces[(n, i)] = {_pair(a, b): _pair(x.face(n, i, a), y.face(n, i, b))
                             for a in x.simplices(n) for b in y.simplices(n)}
    for n in range(d):
        for j in range(n + 1):
            degeneracies[(n, j)] = {_pair(a, b): _pair(x.deg(n, j, a), y.deg(n, j, b))
                                    for a in x.simplices(n) for b in y.simplices(n)}
    return SSet(d, levels, faces, degeneracies)


def projections(x, y):
    """The two projections out of product(x, y)."""
    p = product(x, y)
    d = p.dim
    px = SimplicialMap(p, x, {n: {_pair(a, b): a for a in x.simplices(n)
                                  for b in y.simplices(n)} for n in range(d + 1)})
    py = SimplicialMap(p, y, {n: {_pair(a, b): b for a in x.simplices(n)
                                  for b in y.simplices(n)} for n in range(d + 1)})
    return p, px, py


def coproduct(x, y):
    """Disjoint union, with 'l:'/'r:' prefixed ids and the two injections."""
    if x.dim != y.dim:
        raise InputError("coproduct needs a common truncation")
    d = x.dim
    levels = {n: [f"l:{a}" for a in x.simplices(n)] + [f"r:{b}" for b in y.simplices(n)]
              for n in range(d + 1)}
    faces = {}
    degeneracies = {}
    for n in range(1, d + 1):
        for i in range(n + 1):
            t = {f"l:{a}": f"l:{x.face(n, i, a)}" for a in x.simplices(n)}
            t.update({f"r:{b}": f"r:{y.face(n, i, b)}" for b in y.simplices(n)})
            faces[(n, i)] = t
    for n in range(d):
        for j in range(n + 1):
            t = {f"l:{a}": f"l:{x.deg(n, j, a)}" for a in x.simplices(n)}
            t.update({f"r:{b}": f"r:{y.deg(n, j, b)}" for b in y.simplices(n)})
            degeneracies[(n, j)] = t
    cp = SSet(d, levels, faces, degeneracies)
    inl = SimplicialMap(x, cp, {n: {a: f"l:{a}" for a in x.simplices(n)}
                                for n in range(d + 1)})
    inr = SimplicialMap(y, cp, {n: {b: f"r:{b}" for b in y.simplices(n)}
                                for n in range(d + 1)})
    return cp, inl, inr


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


@dataclass
class PushoutResult:
    sset: SSet
    from_left: SimplicialMap   # X -> P
    from_right: SimplicialMap  # Y -> P


def pushout(f, g):
    """The pushout of X <-f- A -g-> Y, computed levelwise by union-find.

    Class ids are the minimal member of each identified class over the
    disjoint union with 'l:'/'r:' prefixes.
    """
    a, x, y = f.source, f.target, g.target
    if g.source is not a and g.source.levels != a.levels:
        raise InputError("pushout legs must share their source")
    if x.dim != y.dim or x.dim != a.dim:
        raise InputError("pushout needs a common truncation")
    d = x.dim
    reps = {}
    classes = {}
    for n in range(d + 1):
        uf = _UnionFind()
        for s in x.simplices(n):
            uf.add(f"l:{s}")
        for s in y.simplices(n):
            uf.add(f"r:{s}")
        for s in a.simplices(n):
            uf.union(f"l:{f.levels[n][s]}", f"r:{g.levels[n][s]}")
        members = {}
        for s in x.simplices(n):
            members.setdefault(uf.find(f"l:{s}"), []).append(f"l:{s}")
        for s in y.simplices(n):
            members.setdefault(uf.find(f"r:{s}"), []).append(f"r:{s}")
        rep_of = {}
        for group in members.values():
            rep = min(group)
            for m in group:
                rep_of[m] = rep
        reps[n] = rep_of
        classes[n] = sorted(set(rep_of.values()))

    def push_face(table_x, table_y, n, delta):
        out = {}
        for s in x.simplices(n):
            out[reps[n][f"l:{s}"]] = reps[n + delta][f"l:{table_x[s]}"]
        for s in y.simplices(n):
            out[reps[n][f"r:{s}"]] = reps[n + delta][f"r:{table_y[s]}"]
        return out

    faces = {}
    degeneracies = {}
    for n in range(1, d + 1):
        for i in range(n + 1):
            faces[(n, i)] = push_face(x.faces[(n, i)], y.faces[(n, i)], n, -1)
    for n in range(d):
        for j in range(n + 1):
            degeneracies[(n, j)] = push_face(x.degeneracies[(n, j)],
                                             y.degeneracies[(n, j)], n, +1)
    p = SSet(d, {n: classes[n] for n in range(d + 1)}, faces, degeneracies)
    from_left = SimplicialMap(x, p, {n: {s: reps[n][f"l:{s}"] for s in x.simplices(n)}
                                     for n in range(d + 1)})
    from_right = SimplicialMap(y, p, {n: {s: reps[n][f"r:{s}"] for s in y.simplices(n)}
                                      for n in range(d + 1)})
    return PushoutResult(p, from_left, from_right)


def cylinder_ends(a):
    """The two end inclusions A -> A × Δ¹ and the cylinder itself."""
    interval = standard_simplex(1, a.dim)
    cyl = product(a, interval)
    ends = []
    for vertex in ("0", "1"):
        levels = {}
        for n in range(a.dim + 1):
            const = vertex * (n + 1)
            levels[n] = {s: _pair(s, const) for s in a.simplices(n)}
        ends.append(SimplicialMap(a, cyl, levels))
    return cyl, ends[0], ends[1]


def ho_pushout(f, g):
    """The double mapping cylinder X ⊔_{A×{0}} (A×Δ¹) ⊔_{A×{1}} Y."""
    a = f.source
    cyl, i0, i1 = cylinder_ends(a)
    first = pushout(i0, f)  # glue X onto the 0 end: cyl -> P <- X
    # first.from_left : cyl -> P, so the far end of the cylinder maps on
    j = i1.then(first.from_left)
    second = pushout(j, g)
    return second.sset


# -- invariants --------------------------------------------------------------

def pi0(x):
    """Path components: vertices modulo the edge relation, as sorted tuples."""
    uf = _UnionFind()
    for v in x.simplices(0):
        uf.add(v)
    if x.dim >= 1:
        for e in x.simplices(1):
            uf.union(x.face(1, 1, e), x.face(1, 0, e))
    comps = {}
    for v in x.simplices(0):
        comps.setdefault(uf.find(v), []).append(v)
    return tuple(sorted(tuple(sorted(c)) for c in comps.values()))


@dataclass
class GroupoidPresentation:
    """Objects, generating edges, and one relation d1 = d0 ∘ d2 per 2-simplex."""

    objects: tuple
    generators: dict           # edge id -> (source vertex, target vertex)
    relations: tuple = ()      # tuples (d2_edge, d0_edge, d1_edge)


def fundamental_groupoid(x):
    """Presentation by non-degenerate edges with 2-simplex relations."""
    if x.dim < 1:
        return GroupoidPresentation(tuple(x.simplices(0)), {}, ())
    generators = {e: (x.face(1, 1, e), x.face(1, 0, e)) for e in x.nondegenerate(1)}
    relations = []
    if x.dim >= 2:
        for t in x.nondegenerate(2):
            d0, d1, d2 = (x.face(2, i, t) for i in range(3))
            relations.append((d2, d0, d1))
    return GroupoidPresentation(tuple(x.simplices(0)), generators, tuple(relations))


@dataclass
class GroupPresentation:
    """A finitely presented group: generators and relator words.

    Relator words are tuples of (generator, ±1).  ``recognized`` is set by
    :func:`simplify_presentation`: ("trivial",), ("free", rank) or None when
    the recognizer does not apply (no word-problem solving is attempted).
    """

    generators: tuple
    relators: tuple
    recognized: tuple | None = None


def _free_reduce(word):
    out = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def simplify_presentation(gens, relators):
    """Free-reduce relators and eliminate generators killed by length-1 relators.

    Only the free/trivial recognitions are automated; anything else is
    returned as an unrecognized presentation.
    """
    gens = set(gens)
    relators = {_free_reduce(r) for r in relators}
    relators.discard(())
    changed = True
    while changed:
        changed = False
        killed = {r[0][0] for r in relators if len(r) == 1}
        if killed:
            gens -= killed
            relators = {_free_reduce(tuple(l for l in r if l[0] not in killed))
                        for r in relators}
            relators.discard(())
            changed = True
    recognized = None
    if not relators:
        recognized = ("trivial",) if not gens else ("free", len(gens))
    return GroupPresentation(tuple(sorted(gens)), tuple(sorted(relators)), recognized)


def edge_path_group(x, basepoint):
    """The edge-path group presentation at a basepoint.

    Generators are the non-degenerate edges of the basepoint's component that
    lie outside a breadth-first spanning tree; relators come from the
    non-degenerate 2-simplices.
    """
    if basepoint not in x.simplices(0):
        raise InputError(f"basepoint {basepoint!r} is not a vertex")
    if x.dim < 1:
        return simplify_presentation((), ())
    # component and spanning tree by BFS over non-degenerate edges
    adjacency = {}
    nondeg_edges = x.nondegenerate(1)
    for e in nondeg_edges:
        s, t = x.face(1, 1, e), x.face(1, 0, e)
        adjacency.setdefault(s, []).append((t, e))
        adjacency.setdefault(t, []).append((s, e))
    component = {basepoint}
    tree_edges = set()
    frontier = [basepoint]
    while frontier:
        nxt = []
        for v in sorted(frontier):
            for w, e in sorted(adjacency.get(v, ())):
                if w not in component:
                    component.add(w)
                    tree_edges.add(e)
                    nxt.append(w)
        frontier = nxt

    def edge_word(e):
        if e not in nondeg_edges or e in tree_edges:
            return ()
        return ((e, 1),)

    generators = [e for e in nondeg_edges if e not in tree_edges
                  and x.face(1, 1, e) in component]
    relators = []
    if x.dim >= 2:
        for t2 in x.nondegenerate(2):
            d0, d1, d2 = (x.face(2, i, t2) for i in range(3))
            if x.face(1, 1, d2) not in component:
                continue
            word = edge_word(d2) + edge_word(d0) + tuple(
                (g, -s) for g, s in reversed(edge_word(d1)))
            relators.append(word)
    return simplify_presentation(generators, relators)


def skeleton(x, n):
    """The subcomplex generated by simplices of dimension <= n."""
    keep = {m: set(x.simplices(m)) for m in range(min(n, x.dim) + 1)}
    for m in range(n + 1, x.dim + 1):
        keep[m] = set()
        for y in keep[m - 1]:
            for j in range(m):
                keep[m].add(x.deg(m - 1, j, y))
    levels = {m: sorted(keep[m]) for m in range(x.dim + 1)}
    faces = {(m, i): {s: x.face(m, i, s) for s in keep[m]}
             for m in range(1, x.dim + 1) for i in range(m + 1)}
    degeneracies = {(m, j): {s: x.deg(m, j, s) for s in keep[m]}
                    for m in range(x.dim) for j in range(m + 1)}
    return SSet(x.dim, levels, faces, degeneracies)


# -- map enumeration and isomorphism search ----------------------------------

def _assignment_order(a):
    """Non-degenerate simplices of a, level-ascending, ids lexicographic."""
    order = []
    for n in range(a.dim + 1):
        order.extend((n, s) for s in sorted(a.nondegenerate(n)))
    return order


def _force_degenerates(a, x, n, below):
    """Images of the degenerate n-simplices of a, forced by the levels below.

    ``below`` maps n-1 simplices of a to their images.  Returns None when two
    degeneracy presentations of the same simplex disagree.
    """
    forced = {}
    for s in a.simplices(n):
        pres = a.degeneracy_presentations(n, s)
        if not pres:
            continue
        vals = {x.deg(n - 1, j, below[y]) for j, y in pres}
        if len(vals) > 1:
            return None
        forced[s] = vals.pop()
    return forced


def enumerate_maps(a, x, constraints=None, budget=None):
    """All simplicial maps a -> x by deterministic backtracking.

    ``constraints`` maps (level, simplex id) -> forced image.  Non-degenerate
    simplices are assigned level by level in id order; degenerate ones are
    forced by commuting with degeneracies.  ``budget`` bounds the number of
    candidate values tried, raising ResourceBudgetError beyond it.
    """
    constraints = constraints or {}
    x_by_faces = {}
    for n in range(1, x.dim + 1):
        idx = {}
        for s in x.simplices(n):
            idx.setdefault(x.face_tuple(n, s), []).append(s)
        x_by_faces[n] = idx
    results = []
    state = {"tried": 0}

    def level(n, partial):
        if n > a.dim:
            levels = {m: {} for m in range(a.dim + 1)}
            for (m, s), v in partial.items():
                levels[m][s] = v
            results.append(SimplicialMap(a, x, levels))
            return
        below = {s: partial[(n - 1, s)] for s in a.simplices(n - 1)} if n else {}
        forced = _force_degenerates(a, x, n, below) if n else {}
        if forced is None:
            return
        for s, v in forced.items():
            if constraints.get((n, s), v) != v:
                return
        nondeg = sorted(a.nondegenerate(n))
        cur = dict(partial)
        cur.update({(n, s): v for s, v in forced.items()})

        def assign(i):
            if i == len(nondeg):
                level(n + 1, cur)
                return
            s = nondeg[i]
            if n == 0:
                candidates = x.simplices(0)
            else:
                want = tuple(cur[(n - 1, a.face(n, i2, s))] for i2 in range(n + 1))
                candidates = x_by_faces[n].get(want, ())
            if (n, s) in constraints:
                candidates = [c for c in candidates if c == constraints[(n, s)]]
            for c in candidates:
                state["tried"] += 1
                if budget is not None and state["tried"] > budget:
                    raise ResourceBudgetError(
                        f"map enumeration exceeded budget of {budget} candidates")
                cur[(n, s)] = c
                assign(i + 1)
                del cur[(n, s)]

        assign(0)

    level(0, {})
    return results


def find_isomorphism(x, y):
    """A simplicial isomorphism x ≅ y found by backtracking, or None."""
    if x.dim != y.dim or x.level_sizes() != y.level_sizes():
        return None
    for n in range(x.dim + 1):
        if len(x.nondegenerate(n)) != len(y.nondegenerate(n)):
            return None
    y_nondeg_by_faces = {}
    for n in range(1, y.dim + 1):
        idx = {}
        for s in y.nondegenerate(n):
            idx.setdefault(y.face_tuple(n, s), []).append(s)
        y_nondeg_by_faces[n] = idx

    def level(n, partial):
        if n > x.dim:
            levels = {m: {} for m in range(x.dim + 1)}
            for (m, s), v in partial.items():
                levels[m][s] = v
            iso = SimplicialMap(x, y, levels)
            if iso.validate():
                return None
            return iso
        below = {s: partial[(n - 1, s)] for s in x.simplices(n - 1)} if n else {}
        forced = _force_degenerates(x, y, n, below) if n else {}
        if forced is None or len(set(forced.values())) != len(forced):
            return None
        nondeg = sorted(x.nondegenerate(n))
        cur = dict(partial)
        cur.update({(n, s): v for s, v in forced.items()})
        used = set(forced.values())

        def assign(i):
            if i == len(nondeg):
                return level(n + 1, cur)
            s = nondeg[i]
            if n == 0:
                candidates = y.simplices(0)
            else:
                want = tuple(cur[(n - 1, x.face(n, i2, s))] for i2 in range(n + 1))
                candidates = y_nondeg_by_faces[n].get(want, ())
            for c in candidates:
                if c in used:
                    continue
                cur[(n, s)] = c
                used.add(c)
                out = assign(i + 1)
                if out is not None:
                    return out
                del cur[(n, s)]
                used.discard(c)
            return None

        return assign(0)

    return level(0, {})
