"""Tests for exit-code mapping and the Sentry filter."""

import pytest

from src.core.constants import EXIT_INTERNAL_ERROR
from src.core.constants import EXIT_MALFORMED_INPUT
from src.core.constants import EXIT_REFUTED
from src.core.constants import EXIT_USAGE
from src.core.errors import AppError
from src.core.errors import CertificationError
from src.core.errors import IgnoredError
from src.core.errors import MalformedInputError
from src.core.errors import NonOrthogonalError
from src.core.errors import UsageError
from src.core.sentry import before_send
from src.middleware import handle_errors


def _raising(error: Exception):
    @handle_errors
    def command() -> int:
        raise error

    return command


class TestHandleErrors:
    """Tests for the command wrapper."""

    @pytest.mark.parametrize(
        ("error", "code"),
        [
            (UsageError("bad flag"), EXIT_USAGE),
            (MalformedInputError("bad json"), EXIT_MALFORMED_INPUT),
            (NonOrthogonalError("states 0 and 1"), EXIT_REFUTED),
            (CertificationError("witness fails"), EXIT_INTERNAL_ERROR),
            (RuntimeError("boom"), EXIT_INTERNAL_ERROR),
        ],
    )
    def test_exit_codes(self, error: Exception, code: int):
        """Every error ends in its exit code instead of propagating."""
        assert _raising(error)() == code

    def test_passes_through_result(self):
        """A normal return is kept."""

        @handle_errors
        def command() -> int:
            return 2

        assert command() == 2


class TestBeforeSend:
    """Tests for the Sentry event filter."""

    def test_drops_ignored_errors(self):
        """Caller mistakes are not reported."""
        error = UsageError("bad flag")
        hint = {"exc_info": (type(error), error, None)}
        assert before_send({"id": 1}, hint) is None

    def test_keeps_internal_errors(self):
        """Failures of the tool are reported."""
        error = CertificationError("witness fails")
        assert not isinstance(error, IgnoredError)
        assert isinstance(error, AppError)
        event = {"id": 2}
        assert before_send(event, {"exc_info": (type(error), error, None)}) is event

    def test_keeps_messages(self):
        """Events without an exception pass."""
        event = {"message": "hello"}
        assert before_send(event, {}) is event
