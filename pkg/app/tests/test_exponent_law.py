import pytest
from pydantic import ValidationError

from app.exceptions import NotIntegrableError, PreconditionError
from app.schemas.exponent_law import OperatorWord, ProblemVariant, SequentialProblem
from app.schemas.power_sum import PowerSum
from app.services import exponent_law, symbolic


class TestApplyWord:
    def test_half_half_differs_from_whole(self):
        f = PowerSum.monomial(-0.5)
        half_half = exponent_law.apply_word(OperatorWord.of(("D", 0.5), ("D", 0.5)), f)
        whole = exponent_law.apply_word(OperatorWord.of(("D", 1.0)), f)
        assert half_half.result.is_zero
        assert whole.result == PowerSum.monomial(-1.5, -0.5)

    def test_order_of_application(self):
        f = PowerSum.monomial(0.5)
        first = exponent_law.apply_word(OperatorWord.of(("D", 0.5), ("D", 1.5)), f)
        second = exponent_law.apply_word(OperatorWord.of(("D", 1.5), ("D", 0.5)), f)
        square = exponent_law.apply_word(OperatorWord.of(("D", 2.0)), f)
        assert first.result.is_zero
        assert second.result.coefficient_of(-1.5) == pytest.approx(-0.25, rel=1e-14)
        assert symbolic.is_close(second.result, square.result)

    def test_intermediates(self):
        f = PowerSum.monomial(0.5)
        outcome = exponent_law.apply_word(OperatorWord.of(("J", 0.5), ("Dc", 0.5)), f)
        assert len(outcome.intermediates) == 3
        assert outcome.intermediates[0] == f
        assert outcome.intermediates[-1] == outcome.result
        assert outcome.intermediates[1].coefficient_of(0.0) == pytest.approx(0.886226925452758)

    def test_failing_step_is_reported(self):
        word = OperatorWord.of(("J", 0.5), ("D", 1.0))
        with pytest.raises(NotIntegrableError) as excinfo:
            exponent_law.apply_word(word, PowerSum.monomial(-0.5))
        assert excinfo.value.details["step"] == 0
        assert "step 0 (J:0.5)" in str(excinfo.value)

    def test_render(self):
        assert OperatorWord.of(("D", 0.5), ("Dc", 2.0)).render() == "D:0.5,Dc:2"

    def test_empty_word_rejected(self):
        with pytest.raises(ValidationError):
            OperatorWord(steps=())


class TestValidityCases:
    @pytest.mark.parametrize(
        "lam, mu, nu, case",
        [
            (0.5, 1.2, 0.7, 1),
            (-0.4, 2.0, 2.0, 1),
            (0.5, 0.5, 1.3, 2),
            (1.7, 0.2, 2.6, 2),
            (0.5, 1.0, 0.7, 3),
            (2.3, 0.4, 1.9, 3),
        ],
    )
    def test_case_holds(self, lam, mu, nu, case):
        assert exponent_law.check_theorem3(lam, [1.0, 2.0, -0.5], mu, nu, case)

    @pytest.mark.parametrize(
        "lam, mu, nu, case",
        [
            (0.5, 0.5, 0.7, 1),
            (0.5, 1.0, 0.5, 2),
            (0.5, 2.0, 0.5, 3),
            (-1.0, 0.5, 0.2, 1),
            (0.5, 0.5, 0.2, 4),
        ],
    )
    def test_hypothesis_enforced(self, lam, mu, nu, case):
        with pytest.raises(PreconditionError):
            exponent_law.theorem3_sides(lam, [1.0], mu, nu, case)

    def test_eta_power_sum(self):
        f = exponent_law.eta_power_sum(0.5, [1.0, 2.0])
        assert f.pairs == [(1.0, 0.5), (2.0, 1.5)]


class TestSequentialProblems:
    def test_solution_of_problem_a(self):
        problem = SequentialProblem(
            variant=ProblemVariant.A, rhs=PowerSum.constant(1.0), constants=(3.0, 5.0)
        )
        solution = exponent_law.solve_sequential(problem)
        assert solution == PowerSum.from_pairs([(5.0, -0.5), (3.0, 0.0), (1.0, 1.0)])
        _, ok = exponent_law.verify_sequential(problem, solution)
        assert ok

    @pytest.mark.parametrize(
        "variant, dimension", [(ProblemVariant.A, 2), (ProblemVariant.B, 2), (ProblemVariant.C, 1)]
    )
    def test_solution_space_dimension(self, variant, dimension):
        problem = SequentialProblem(
            variant=variant, alpha=0.3, beta=0.7, rhs=PowerSum.monomial(1.0)
        )
        assert len(exponent_law.solution_space_basis(problem)) == dimension
        assert exponent_law.verified_dimension(problem) == dimension

    def test_problem_b_basis(self):
        problem = SequentialProblem(
            variant=ProblemVariant.B, alpha=0.3, beta=0.7, rhs=PowerSum.constant(1.0)
        )
        basis = exponent_law.solution_space_basis(problem)
        assert basis[1].lowest_exponent == pytest.approx(-0.7)

    def test_wrong_basis_element_rejected(self):
        problem = SequentialProblem(
            variant=ProblemVariant.A, alpha=0.75, beta=0.25, rhs=PowerSum.constant(1.0)
        )
        candidate = exponent_law.solve_sequential(problem) + PowerSum.monomial(-0.25)
        residual, ok = exponent_law.verify_sequential(problem, candidate)
        assert not ok
        assert not residual.is_zero

    def test_orders_must_sum_to_one(self):
        with pytest.raises(ValidationError):
            SequentialProblem(
                variant=ProblemVariant.A, alpha=0.3, beta=0.3, rhs=PowerSum.constant(1.0)
            )

    def test_constant_count(self):
        with pytest.raises(ValidationError):
            SequentialProblem(
                variant=ProblemVariant.C, rhs=PowerSum.constant(1.0), constants=(1.0, 2.0)
            )
