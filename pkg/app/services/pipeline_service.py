"""
Command pipeline shared by the CLI and the HTTP API.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from pydantic import ValidationError

from app.algebra.groebner import computation_deadline
from app.algebra.ideals import hilbert_value
from app.algebra.orders import DEGREVLEX, LEX
from app.algebra.syntax import format_polynomial
from app.config import get_settings
from app.exceptions import InvalidInputError
from app.models.components import Decomposition
from app.schemas.reports import (
    BoundsReport,
    CheckOut,
    ChecksReport,
    ComponentOut,
    DecompositionReport,
    ExperimentRowOut,
    HullReport,
    IdealReport,
    RunReport,
    VerifyReport,
)
from app.schemas.run_config import RunConfig
from app.services.building_service import apartment_sketch, secondary_candidates, tropical_hull
from app.services.checks_service import (
    count_bounds,
    general_position_experiment,
    is_multiplicity_free_case,
    structural_checks,
)
from app.services.classification_service import ComponentClassifier
from app.utils.config_parser import parse_config

logger = logging.getLogger(__name__)

COMMANDS = ("ideal", "fiber", "components", "classify", "hull", "bounds", "check", "verify", "experiment")


@dataclass(frozen=True)
class GoldenCase:
    name: str
    config: str
    expected: str
    bound_summary: bool = False


GOLDEN_CASES = {
    case.name: case
    for case in (
        GoldenCase(
            "paper-example",
            "d=3\nflag=1,2\nlattice diag=0,0,0\nlattice diag=1,0,0\nlattice diag=0,0,1\nradius=0\n",
            "8 components: 3 primary, 1 secondary(L4), 4 mixed",
        ),
        GoldenCase(
            "paper-example-2",
            "d=3\nflag=1,2\nlattice diag=1,0,0\nlattice diag=0,0,1\nradius=0\n",
            "6 components: 2 primary, 0 secondary, 4 mixed",
        ),
        GoldenCase(
            "d2-line",
            "d=2\nflag=1\nlattice diag=0,0\nlattice diag=1,0\nradius=0\n",
            "2 components, bound 2 attained",
            bound_summary=True,
        ),
    )
}


def _decomposition_report(
    decomposition: Decomposition, blocks: Sequence[Sequence[str]], labelled: bool
) -> DecompositionReport:
    ring = decomposition.fiber.ring
    unit = [1] * len(blocks)
    components = []
    for i, c in enumerate(decomposition.components, start=1):
        components.append(
            ComponentOut(
                index=i,
                generators=[format_polynomial(g, ring) for g in c.prime.groebner_basis()],
                dimension=c.dimension,
                hilbert=hilbert_value(c.prime, blocks, unit),
                kind=c.label.kind.value if labelled else None,
                label=c.label.describe() if labelled else None,
                confidence=c.confidence.value,
                evidence=c.evidence,
            )
        )
    return DecompositionReport(
        summary=decomposition.summary() if labelled else f"{len(components)} components",
        validated=decomposition.validated,
        radical=decomposition.radical,
        components=components,
        dual_graph=[(a + 1, b + 1) for a, b in decomposition.dual_graph],
        notes=decomposition.notes,
    )


def bound_summary(count: int, upper: Optional[int]) -> str:
    if upper is None:
        return f"{count} components, no upper bound"
    return f"{count} components, bound {upper} " + ("attained" if count == upper else "not attained")


class RunPipeline:
    """Runs one command on a parsed configuration."""

    def __init__(self, config: RunConfig, classifier: Optional[ComponentClassifier] = None):
        settings = get_settings()
        self.config = config
        self.flag = config.flag_type()
        self.configuration = config.configuration()
        self.seed = settings.seed if config.seed is None else config.seed
        self.timeout = config.timeout_secs or settings.timeout_secs
        self.classifier = classifier or ComponentClassifier(
            seed=self.seed, radius=config.radius, max_candidates=config.max_candidates
        )

    def _report(self, command: str) -> RunReport:
        return RunReport(
            command=command,
            flag=self.flag.label,
            d=self.flag.d,
            configuration=[v.label() for v in self.configuration],
            seed=self.seed,
        )

    def run(self, command: str, case: Optional[GoldenCase] = None) -> RunReport:
        if command not in COMMANDS:
            raise InvalidInputError(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
        logger.info(f"running {command} for {self.flag.label} over {len(self.configuration)} vertices")
        with computation_deadline(self.timeout):
            report = self._report(command)
            handler = getattr(self, f"_{command}")
            if command == "verify":
                if case is None:
                    raise InvalidInputError("verify needs a case name")
                handler(report, case)
            else:
                handler(report)
        return report

    def _blocks(self) -> list[list[str]]:
        return self.classifier.degeneration(self.configuration, self.flag).block_names()

    def _ideal_section(self, ideal, ring, provenance) -> IdealReport:
        order = LEX if self.config.order == "lex" else DEGREVLEX
        return IdealReport(
            ring=list(ring.names),
            order=self.config.order,
            generators=[format_polynomial(g, ring, order) for g in ideal.groebner_basis(order)],
            provenance=provenance,
        )

    def _ideal(self, report: RunReport) -> None:
        degeneration = self.classifier.degeneration(self.configuration, self.flag)
        report.ideal = self._ideal_section(degeneration.flat_ideal, degeneration.ring, degeneration.provenance)

    def _fiber(self, report: RunReport) -> None:
        degeneration = self.classifier.degeneration(self.configuration, self.flag)
        report.ideal = self._ideal_section(
            degeneration.fiber_ideal, degeneration.fiber_ring, degeneration.provenance
        )

    def _components(self, report: RunReport) -> None:
        decomposition = self.classifier.decompose(self.configuration, self.flag)
        report.decomposition = _decomposition_report(decomposition, self._blocks(), labelled=False)

    def _classify(self, report: RunReport) -> None:
        decomposition = self.classifier.classify(self.configuration, self.flag)
        report.decomposition = _decomposition_report(decomposition, self._blocks(), labelled=True)

    def _hull(self, report: RunReport) -> None:
        vertices = self.configuration.vertices
        report.hull = HullReport(
            min_hull=[v.label() for v in tropical_hull(vertices, "min")],
            max_hull=[v.label() for v in tropical_hull(vertices, "max")],
            candidates=[v.label() for v in secondary_candidates(self.configuration, self.classifier.radius)],
            sketch=apartment_sketch(self.configuration),
        )

    def _bounds(self, report: RunReport) -> None:
        n = len(self.configuration)
        lower, upper = count_bounds(self.flag, n)
        report.bounds = BoundsReport(
            lower=lower,
            upper=upper,
            schubert_cells=self.flag.schubert_cells,
            flag_dimension=self.flag.dimension,
            multiplicity_free=is_multiplicity_free_case(self.flag, n),
        )

    def _checks(self, decomposition: Decomposition) -> ChecksReport:
        degeneration = self.classifier.degeneration(self.configuration, self.flag)
        result = structural_checks(decomposition, self.configuration, self.flag, degeneration, self.seed)
        return ChecksReport(
            passed=result.passed,
            checks=[CheckOut(name=c.name, passed=c.passed, witness=c.witness) for c in result.checks],
        )

    def _check(self, report: RunReport) -> None:
        decomposition = self.classifier.decompose(self.configuration, self.flag)
        report.decomposition = _decomposition_report(decomposition, self._blocks(), labelled=False)
        report.checks = self._checks(decomposition)
        report.passed = report.checks.passed

    def _experiment(self, report: RunReport) -> None:
        rows = general_position_experiment(self.flag, self.config.trials, self.seed)
        report.experiment = [
            ExperimentRowOut(
                trial=r.trial, exponents=r.exponents, components=r.components, bound=r.bound, attained=r.attained
            )
            for r in rows
        ]
        report.passed = all(r.components <= r.bound for r in rows)

    def _verify(self, report: RunReport, case: GoldenCase) -> None:
        decomposition = self.classifier.classify(self.configuration, self.flag)
        report.decomposition = _decomposition_report(decomposition, self._blocks(), labelled=True)
        report.checks = self._checks(decomposition)
        if case.bound_summary:
            actual = bound_summary(len(decomposition.components), count_bounds(self.flag, len(self.configuration))[1])
        else:
            actual = decomposition.summary()
        passed = actual == case.expected and report.checks.passed
        report.verify = VerifyReport(case=case.name, passed=passed, expected=case.expected, actual=actual)
        report.passed = passed
        logger.info(f"verify {case.name}: {'PASS' if passed else 'FAIL'} ({actual})")


def run(
    command: str,
    config: Optional[RunConfig] = None,
    case: Optional[str] = None,
    seed: Optional[int] = None,
    timeout_secs: Optional[float] = None,
    radius: Optional[int] = None,
    max_candidates: Optional[int] = None,
    order: Optional[str] = None,
) -> RunReport:
    """Run a command; ``verify`` takes its configuration from the named golden case.

    The keyword options override the golden configuration for ``verify``;
    other commands carry them in ``config``.
    """
    if command == "verify":
        if case not in GOLDEN_CASES:
            raise InvalidInputError(f"unknown verify case {case!r}; expected one of {', '.join(GOLDEN_CASES)}")
        golden = GOLDEN_CASES[case]
        updates = {
            "seed": seed,
            "timeout_secs": timeout_secs,
            "radius": radius,
            "max_candidates": max_candidates,
            "order": order,
        }
        updates = {k: v for k, v in updates.items() if v is not None}
        try:
            base = RunConfig.model_validate({**parse_config(golden.config).model_dump(), **updates})
        except ValidationError as e:
            raise InvalidInputError(f"invalid option: {e.errors()[0]['msg']}") from e
        return RunPipeline(base).run(command, golden)
    if config is None:
        raise InvalidInputError(f"{command} needs a configuration")
    return RunPipeline(config).run(command)


def render_text(report: RunReport) -> str:
    """Human-readable rendering of a run report."""
    lines = [
        f"command: {report.command}",
        f"flag type: {report.flag} (d = {report.d})",
        "configuration: " + ", ".join(report.configuration),
        f"seed: {report.seed}",
    ]
    if report.ideal:
        lines.append(f"ring: {', '.join(report.ideal.ring)} ({report.ideal.order})")
        lines.extend(f"  {g}" for g in report.ideal.generators)
        lines.extend(f"# {p}" for p in report.ideal.provenance)
    if report.decomposition:
        d = report.decomposition
        lines.append(d.summary)
        for c in d.components:
            title = f"[{c.index}] dim {c.dimension}, hilbert {c.hilbert}, {c.confidence}"
            if c.label:
                title += f": {c.label}"
            lines.append(title)
            lines.extend(f"    {g}" for g in c.generators)
        lines.append("dual graph: " + (", ".join(f"{a}-{b}" for a, b in d.dual_graph) or "no edges"))
        lines.append(f"radical: {'yes' if d.radical else 'no'}")
        lines.extend(f"note: {n}" for n in d.notes)
    if report.hull:
        h = report.hull
        lines.append("min hull: " + " ".join(h.min_hull))
        lines.append("max hull: " + " ".join(h.max_hull))
        lines.append("candidates: " + (" ".join(h.candidates) or "none"))
        if report.d == 3 and h.sketch:
            lines.append(f"{'vertex':<12}{'config':<8}{'min':<6}{'max':<6}")
            for row in h.sketch:
                marks = ["x" if row[k] else "." for k in ("in_configuration", "min_hull", "max_hull")]
                lines.append(f"{row['vertex']:<12}{marks[0]:<8}{marks[1]:<6}{marks[2]:<6}")
    if report.bounds:
        b = report.bounds
        upper = "none" if b.upper is None else str(b.upper)
        lines.append(f"bounds: {b.lower} <= components <= {upper}")
        lines.append(f"schubert cells: {b.schubert_cells}, flag dimension: {b.flag_dimension}")
        lines.append(f"multiplicity-free case: {'yes' if b.multiplicity_free else 'no'}")
    if report.checks:
        for c in report.checks.checks:
            lines.append(f"{'ok  ' if c.passed else 'FAIL'} {c.name}" + (f": {c.witness}" if c.witness else ""))
    if report.experiment:
        lines.append(f"{'trial':<7}{'e':<14}{'count':<7}{'bound':<7}")
        for r in report.experiment:
            e = ",".join(str(x) for x in r.exponents)
            lines.append(f"{r.trial:<7}{e:<14}{r.components:<7}{r.bound:<7}" + (" attained" if r.attained else ""))
    if report.verify:
        v = report.verify
        lines.append(f"{'PASS' if v.passed else 'FAIL'} {v.case}: {v.actual}")
        if not v.passed:
            lines.append(f"expected: {v.expected}")
    return "\n".join(lines)
