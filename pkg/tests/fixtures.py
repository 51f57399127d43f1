"""Shared diagram and coalgebra fixtures for the test suite."""

from coendcalc import (
    ComodulePresentation,
    DiagramPresentation,
    Matrix,
    TensorData,
    comatrix_coalgebra,
    grouplike_coalgebra,
)


def unit_matrix(field, d, i, j):
    """The d x d matrix with a single 1 in row i, column j."""
    return Matrix(
        field, d, d, [field.one if (r, c) == (i, j) else field.zero for r in range(d) for c in range(d)]
    )


def comatrix_diagram(field, d):
    """One object of dimension d whose only span matrix is the identity."""
    return DiagramPresentation(field, [("X", d)], {("X", "X"): [Matrix.identity(field, d)]})


def full_matrix_diagram(field, d):
    """One object of dimension d with the full matrix algebra as span."""
    span = [unit_matrix(field, d, i, j) for i in range(d) for j in range(d)]
    return DiagramPresentation(field, [("X", d)], {("X", "X"): span})


def isolated_points(field, dims):
    """Objects with identity spans and no connecting morphisms."""
    objects = [(f"P{i}", d) for i, d in enumerate(dims)]
    spans = {
        (name, name): [Matrix.identity(field, d)] for name, d in objects if d > 0
    }
    return DiagramPresentation(field, objects, spans)


def connected_pair(field):
    """Two 1-dim objects joined by [1] in both directions."""
    one = Matrix.from_rows(field, [[1]])
    return DiagramPresentation(
        field,
        [("X", 1), ("Y", 1)],
        {
            ("X", "X"): [one],
            ("Y", "Y"): [one],
            ("X", "Y"): [one],
            ("Y", "X"): [one],
        },
    )


def nilpotent_diagram(field):
    """One 2-dim object with span {identity, strictly upper triangular}."""
    n = Matrix.from_rows(field, [[0, 1], [0, 0]])
    return DiagramPresentation(
        field, [("X", 2)], {("X", "X"): [Matrix.identity(field, 2), n]}
    )


def two_object_unsaturated(field):
    """Two 2-dim objects whose composites escape the given spans."""
    return DiagramPresentation(
        field,
        [("X", 2), ("Y", 2)],
        {
            ("X", "X"): [Matrix.identity(field, 2)],
            ("Y", "Y"): [Matrix.identity(field, 2)],
            ("X", "Y"): [unit_matrix(field, 2, 0, 1)],
            ("Y", "X"): [unit_matrix(field, 2, 1, 0)],
        },
    )


def grading_skeleton(field, k):
    """The cyclic grading fixture: k one-dim objects, addition table, trivial
    comparison maps."""
    objects = [(f"g{i}", 1) for i in range(k)]
    spans = {(f"g{i}", f"g{i}"): [Matrix.identity(field, 1)] for i in range(k)}
    diagram = DiagramPresentation(field, objects, spans)
    table = {
        (f"g{i}", f"g{j}"): f"g{(i + j) % k}" for i in range(k) for j in range(k)
    }
    tensor = TensorData.build(diagram, "g0", table)
    return diagram, tensor


def one_directional_z3(field):
    """A Z/3 table whose spans are not closed under the tensor product.

    The only non-identity morphism goes g0 -> g1, so tensoring it with the
    identity of g1 would need a morphism g1 -> g2 that the spans lack;
    naturality closure fails and the coend multiplication is ill-defined.
    """
    objects = [(f"g{i}", 1) for i in range(3)]
    one = Matrix.from_rows(field, [[1]])
    spans = {(f"g{i}", f"g{i}"): [one] for i in range(3)}
    spans[("g0", "g1")] = [one]
    diagram = DiagramPresentation(field, objects, spans)
    table = {
        (f"g{i}", f"g{j}"): f"g{(i + j) % 3}" for i in range(3) for j in range(3)
    }
    tensor = TensorData.build(diagram, "g0", table)
    return diagram, tensor


def regular_comodule_setup(field, d=2):
    """The d x d matrix-coefficient coalgebra with its regular comodule."""
    coalg = comatrix_coalgebra(field, d)
    regular = ComodulePresentation(dim=d * d, rho=coalg.delta)
    return coalg, [regular]


def two_grouplike_setup(field):
    """The two-grouplike coalgebra with its two 1-dim comodules."""
    coalg = grouplike_coalgebra(field, 2)
    m0 = ComodulePresentation(dim=1, rho=Matrix.from_rows(field, [[1], [0]]))
    m1 = ComodulePresentation(dim=1, rho=Matrix.from_rows(field, [[0], [1]]))
    return coalg, [m0, m1]


def all_diagram_fixtures(field, max_comatrix_dim=4):
    """Every named diagram fixture, for the cross-cutting invariants."""
    from coendcalc import diagram_from_comodules, saturate_spans

    fixtures = []
    for d in range(2, max_comatrix_dim + 1):
        fixtures.append((f"comatrix d={d}", comatrix_diagram(field, d)))
    for d in (2, 3):
        fixtures.append((f"full matrix d={d}", full_matrix_diagram(field, d)))
    fixtures.append(("isolated 1+1", isolated_points(field, [1, 1])))
    fixtures.append(("connected pair", connected_pair(field)))
    fixtures.append(("nilpotent", nilpotent_diagram(field)))
    fixtures.append(("two-object saturated", saturate_spans(two_object_unsaturated(field))))
    for k in (2, 3):
        fixtures.append((f"grading Z/{k}", grading_skeleton(field, k)[0]))
    coalg, mods = regular_comodule_setup(field)
    fixtures.append(("regular comodule diagram", diagram_from_comodules(coalg, mods)))
    coalg2, mods2 = two_grouplike_setup(field)
    fixtures.append(("two-grouplike diagram", diagram_from_comodules(coalg2, mods2)))
    return fixtures
