"""Service layer running the solver backends and certifying their answers."""

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from stepfit.core.config import Algorithm
from stepfit.core.errors import ValidationError
from stepfit.core.logging import get_logger
from stepfit.models.domain import Instance, StepFunction

from .decision import DecisionOracle, decide
from .geometry import build_dual_lines, distance
from .oracle import candidate_values, solve_bruteforce
from .parametric import solve_parametric

logger = get_logger(__name__)


@dataclass
class FitResult:
    """Outcome of one solver run."""

    algorithm: Algorithm
    eps_star: Fraction
    step_function: StepFunction
    n: int
    k: int
    oracle_calls: int
    elapsed_ms: float
    max_active: Optional[int] = None
    rounds: Optional[int] = None
    depth: Optional[int] = None


@dataclass
class Certificate:
    """Independent checks that a tolerance and step function are optimal."""

    distance_matches: bool
    within_k: bool
    is_candidate: bool
    predecessor_infeasible: bool
    problems: List[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.problems


class FittingService:
    """Service class orchestrating the step-function solvers."""

    def fit(self, inst: Instance, algorithm: Algorithm = Algorithm.PARAMETRIC) -> FitResult:
        """Solve ``inst`` with the chosen backend.

        Args:
            inst: The instance to solve
            algorithm: Backend to use

        Returns:
            FitResult with the optimum, a witness and run statistics
        """
        oracle = DecisionOracle(inst)
        start = time.perf_counter()
        if algorithm == Algorithm.PARAMETRIC:
            result = solve_parametric(inst, oracle=oracle)
            elapsed = (time.perf_counter() - start) * 1000
            fit = FitResult(
                algorithm=algorithm,
                eps_star=result.eps_star,
                step_function=result.step_function,
                n=inst.n,
                k=inst.k,
                oracle_calls=oracle.calls,
                elapsed_ms=elapsed,
                max_active=result.state.stats.max_active,
                rounds=result.state.stats.rounds,
                depth=result.depth,
            )
        elif algorithm == Algorithm.BRUTEFORCE:
            eps_star, f = solve_bruteforce(inst, oracle=oracle)
            elapsed = (time.perf_counter() - start) * 1000
            fit = FitResult(
                algorithm=algorithm,
                eps_star=eps_star,
                step_function=f,
                n=inst.n,
                k=inst.k,
                oracle_calls=oracle.calls,
                elapsed_ms=elapsed,
            )
        else:
            raise ValidationError("unknown algorithm", details={"algorithm": str(algorithm)})

        logger.info(
            "Fit completed",
            extra={
                "algorithm": algorithm.value,
                "n": inst.n,
                "k": inst.k,
                "eps_star": str(fit.eps_star),
                "oracle_calls": fit.oracle_calls,
                "elapsed_ms": round(fit.elapsed_ms, 3),
            },
        )
        return fit

    def certify(self, inst: Instance, eps_star: Fraction, f: StepFunction) -> Certificate:
        """Check ``eps_star`` and ``f`` against the arrangement candidates.

        ``f`` must be exactly ``eps_star`` away from the points with at most
        k steps, ``eps_star`` must be a crossing ordinate of the dual lines,
        and the tolerance halfway to the previous candidate must fail.
        """
        problems = []
        d = distance(inst.points, f)
        distance_matches = d == eps_star
        if not distance_matches:
            problems.append(f"distance {d} differs from optimum {eps_star}")
        within_k = f.num_steps <= inst.k
        if not within_k:
            problems.append(f"{f.num_steps} steps exceed k={inst.k}")

        candidates = candidate_values(build_dual_lines(inst.points))
        is_candidate = eps_star in candidates
        if not is_candidate:
            problems.append(f"optimum {eps_star} is not a crossing ordinate")

        predecessor_infeasible = True
        previous = candidates.predecessor(eps_star)
        if eps_star > 0 and previous is not None:
            midway = eps_star - (eps_star - previous) / 2
            predecessor_infeasible = not decide(inst, midway).feasible
            if not predecessor_infeasible:
                problems.append(f"tolerance {midway} below the optimum is feasible")

        return Certificate(
            distance_matches=distance_matches,
            within_k=within_k,
            is_candidate=is_candidate,
            predecessor_infeasible=predecessor_infeasible,
            problems=problems,
        )


# Singleton instance
_service: Optional[FittingService] = None


def get_fitting_service() -> FittingService:
    """Get or create singleton service instance."""
    global _service
    if _service is None:
        _service = FittingService()
    return _service
