from pathlib import Path

from src.exceptions import (
    DomainError,
    EmitError,
    NumericalError,
    ParameterError,
    QDeltaError,
    SingularMatrixError,
    SweepError,
    format_error_context,
)


def test_numeric_errors_share_a_base():
    for error_type in (DomainError, SingularMatrixError, SweepError):
        assert issubclass(error_type, NumericalError)
        assert issubclass(error_type, QDeltaError)
    assert not issubclass(ParameterError, NumericalError)
    assert not issubclass(EmitError, NumericalError)


def test_errors_carry_context():
    singular = SingularMatrixError("singular", pivot=1e-20, column="c3")
    assert (singular.pivot, singular.column) == (1e-20, "c3")
    emit = EmitError("cannot write", path=Path("out.csv"))
    assert emit.path == Path("out.csv")


def test_format_error_context():
    error = DomainError("E <= m")
    assert format_error_context(error) == "E <= m"
    assert format_error_context(error, {"E": 0.5}) == "E <= m (Context: E=0.5)"
