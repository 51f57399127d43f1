"""Comodule diagrams and the coalgebra reconstruction round trip.

Given coalgebra structure constants and a finite list of comodules, the
forgetful diagram has the comodules as objects and the full spaces of
comodule morphisms as hom spans.  The canonical map reads the coalgebra
leg off each coaction; when the chosen comodules see enough of the
coalgebra it is an isomorphism onto it, and a proper subcoalgebra is
reported honestly as a partial reconstruction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .coend import (
    CoalgebraData,
    CoendStructure,
    coalgebra_structure,
    compute_coend,
    induced_coaction,
    is_coalgebra_map,
    verify_coaction,
)
from .diagram import DiagramPresentation
from .errors import ShapeError, WellDefinednessError
from .linalg import Matrix, kernel_basis, kron, rank, unvec_matrix, vec_matrix
from .reports import CheckReport


@dataclass(frozen=True)
class ComodulePresentation:
    """A finite-dimensional right comodule given by its coaction matrix.

    ``rho`` is (dim * n) x dim over a coalgebra of dimension n; column j
    lists the coordinates of the coaction of basis vector j in the
    (vector (x) coalgebra) ordering used by the Kronecker convention.
    """

    dim: int
    rho: Matrix


def verify_comodule(c: CoalgebraData, m: ComodulePresentation) -> CheckReport:
    """Exact coaction axioms for one comodule."""
    return verify_coaction(c, m.rho, m.dim)


def comodule_hom_span(
    c: CoalgebraData, m: ComodulePresentation, n: ComodulePresentation
) -> list:
    """Basis of the space of comodule morphisms from m to n.

    A map g must satisfy rho_n . g = (g (x) id) . rho_m; the solutions
    form the kernel of a linear system over the entries of g.
    """
    for mod in (m, n):
        report = verify_comodule(c, mod)
        if not report.passed:
            raise ShapeError(f"comodule violates an axiom: {report.failures()[0]}")
    field = c.field
    dm, dn, nc = m.dim, n.dim, c.dim
    cols = []
    ident = Matrix.identity(field, nc)
    for flat in range(dn * dm):
        g = unvec_matrix(
            field,
            [field.one if k == flat else field.zero for k in range(dn * dm)],
            dn,
            dm,
        )
        defect = n.rho * g - kron(g, ident) * m.rho
        cols.append(vec_matrix(defect))
    if cols:
        system = Matrix.from_cols(field, cols)
    else:
        system = Matrix(field, dn * nc * dm, 0, [])
    return [unvec_matrix(field, v, dn, dm) for v in kernel_basis(system)]


def diagram_from_comodules(
    c: CoalgebraData, mods: list, names: Optional[list] = None
) -> DiagramPresentation:
    """The forgetful diagram of the given comodules.

    Hom spans are the full comodule morphism spaces, so composition
    closure holds automatically.
    """
    if names is None:
        names = [f"M{i}" for i in range(len(mods))]
    objects = [(name, mod.dim) for name, mod in zip(names, mods)]
    spans = {}
    for i, src in enumerate(mods):
        for j, dst in enumerate(mods):
            basis = comodule_hom_span(c, src, dst)
            if basis:
                spans[(names[i], names[j])] = tuple(basis)
    return DiagramPresentation(c.field, objects, spans)


def canonical_map(
    coend: CoendStructure, c: CoalgebraData, mods: list
) -> Matrix:
    """The map from the coend onto the coalgebra, read off the coactions.

    The generator (i, j) of the block of comodule X goes to the
    coalgebra leg of the coaction of basis vector j paired against dual
    basis vector i.  The assembled map must kill the relation space.
    """
    field = c.field
    nc = c.dim
    names = coend.layout.names
    if len(names) != len(mods):
        raise ShapeError("coend and comodule list do not match")
    cols = []
    for name, mod in zip(names, mods):
        d = coend.diagram.dim(name)
        if d != mod.dim:
            raise ShapeError(f"object {name!r} and its comodule disagree on dimension")
        for i in range(d):
            for j in range(d):
                cols.append(tuple(mod.rho[i * nc + a, j] for a in range(nc)))
    if cols:
        phi_v = Matrix.from_cols(field, cols)
    else:
        phi_v = Matrix(field, nc, 0, [])
    zero = field.zero
    for ridx, rel in enumerate(coend.relation_basis):
        if any(x != zero for x in phi_v.apply(rel)):
            raise WellDefinednessError(
                "canonical map does not vanish on the relation space",
                witness=f"relation {ridx}",
            )
    return phi_v * coend.split.section


@dataclass
class RoundtripReport:
    """Outcome of one reconstruction round trip."""

    status: str  # PASS, PARTIAL, or FAIL
    coend_dim: int
    image_dim: int
    checks: CheckReport
    mapping: Optional[Matrix] = None

    @property
    def passed(self) -> bool:
        return self.status == "PASS"


def roundtrip_verify(c: CoalgebraData, mods: list) -> RoundtripReport:
    """Rebuild the coalgebra from its comodules and compare.

    PASS means the canonical map is a bijective coalgebra map; PARTIAL
    means it is injective onto a proper subcoalgebra (the image dimension
    is reported); anything else is FAIL.
    """
    checks = CheckReport()
    ok = True
    for idx, mod in enumerate(mods):
        report = verify_comodule(c, mod)
        checks.extend(report, prefix=f"comodule {idx}: ")
        ok = ok and report.passed
    if not ok:
        return RoundtripReport("FAIL", 0, 0, checks)

    diagram = diagram_from_comodules(c, mods)
    coend = compute_coend(diagram)
    try:
        phi = canonical_map(coend, c, mods)
        checks.ok("canonical map well-defined")
    except WellDefinednessError as err:
        checks.fail("canonical map well-defined", witness=str(err.witness))
        return RoundtripReport("FAIL", coend.dim, 0, checks)

    image_dim = rank(phi)
    injective = image_dim == coend.dim
    surjective = image_dim == c.dim
    checks.add(
        "injective",
        injective,
        None if injective else f"rank {image_dim} of coend dim {coend.dim}",
    )
    checks.add(
        "surjective onto coalgebra",
        surjective,
        None if surjective else f"image dim {image_dim} of {c.dim}",
    )

    coend_coalg = coalgebra_structure(coend)
    checks.extend(is_coalgebra_map(coend_coalg, c, phi), prefix="canonical map: ")

    witness = None
    for name, mod in zip(coend.layout.names, mods):
        rho_induced = induced_coaction(coend, name).matrix
        carried = kron(Matrix.identity(c.field, mod.dim), phi) * rho_induced
        if carried != mod.rho:
            witness = f"comodule at object {name!r}"
            break
    checks.add("induced coactions carried back", witness is None, witness)

    map_ok = all(
        ch.passed
        for ch in checks.checks
        if ch.name not in ("surjective onto coalgebra",)
    )
    if map_ok and surjective:
        status = "PASS"
    elif map_ok:
        status = "PARTIAL"
    else:
        status = "FAIL"
    return RoundtripReport(status, coend.dim, image_dim, checks, mapping=phi)
