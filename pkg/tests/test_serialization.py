"""Tests for the canonical JSON documents."""

from pathlib import Path

import orjson
import pytest

from src.core.errors import MalformedInputError
from src.schemas.documents import DecompositionDocument
from src.schemas.documents import StateSetDocument
from src.schemas.hypercube import Decomposition
from src.schemas.states import LocalVector
from src.schemas.states import ProductState
from src.schemas.states import StateSet
from src.services.states import point_vector
from src.utils.cyclotomic import CycNum
from src.utils.serialization import dumps
from src.utils.serialization import loads
from src.utils.serialization import parse_document
from src.utils.serialization import read_document


class TestDocuments:
    """Tests for document round trips."""

    def test_state_set(self, upb333: StateSet):
        """A state set survives encoding exactly, labels included."""
        document = parse_document(dumps(StateSetDocument.from_domain(upb333)))
        assert isinstance(document, StateSetDocument)
        assert document.to_domain() == upb333

    def test_decomposition(self, dec333: Decomposition):
        """A decomposition survives encoding."""
        document = parse_document(dumps(DecompositionDocument.from_domain(dec333)))
        assert isinstance(document, DecompositionDocument)
        assert document.to_domain().blocks == dec333.blocks

    def test_canonical_bytes(self, ops333: StateSet):
        """Sorted keys, two-space indent and a trailing newline."""
        data = dumps(StateSetDocument.from_domain(ops333))
        assert data == dumps(StateSetDocument.from_domain(ops333))
        assert data.startswith(b'{\n  "dims": [')
        assert data.endswith(b"}\n")

    def test_big_coefficients(self):
        """Coefficients beyond 2^53 - 1 travel as decimal strings."""
        big = CycNum.from_int(2**60, 1)
        one = CycNum.from_int(1, 1)
        state = ProductState(
            factors=(
                LocalVector(party=1, amps=(big, one, one)),
                point_vector(2, 0, 3),
                point_vector(3, 0, 3),
            )
        )
        states = StateSet(dims=(3, 3, 3), states=(state,))
        data = dumps(StateSetDocument.from_domain(states))
        assert b'"1152921504606846976"' in data
        restored = parse_document(data).to_domain()
        assert restored.states[0].factors[0].amps[0] == 2**60

    def test_read_document(self, tmp_path: Path, dec333: Decomposition):
        """Documents load from files."""
        path = tmp_path / "dec.json"
        path.write_bytes(dumps(DecompositionDocument.from_domain(dec333)))
        assert isinstance(read_document(path), DecompositionDocument)


class TestMalformed:
    """Tests for rejected inputs."""

    def test_invalid_json(self):
        """Syntax errors are malformed input."""
        with pytest.raises(MalformedInputError):
            loads(b"{")

    @pytest.mark.parametrize("payload", [b"[1, 2]", b'{"kind": "basis"}', b"{}"])
    def test_unknown_shape(self, payload: bytes):
        """Only decomposition and states objects are documents."""
        with pytest.raises(MalformedInputError):
            parse_document(payload)

    def test_unsupported_dims(self, dec333: Decomposition):
        """Decomposition documents must carry supported dimensions."""
        raw = orjson.loads(dumps(DecompositionDocument.from_domain(dec333)))
        raw["dims"] = [3, 3]
        with pytest.raises(MalformedInputError):
            parse_document(orjson.dumps(raw))

    def test_wrong_factor_dimension(self, ops333: StateSet):
        """A factor of the wrong length is rejected."""
        raw = orjson.loads(dumps(StateSetDocument.from_domain(ops333)))
        raw["dims"] = [3, 3, 4]
        with pytest.raises(MalformedInputError):
            parse_document(orjson.dumps(raw))

    def test_unknown_field(self, ops333: StateSet):
        """Extra fields are rejected."""
        raw = orjson.loads(dumps(StateSetDocument.from_domain(ops333)))
        raw["extra"] = 1
        with pytest.raises(MalformedInputError):
            parse_document(orjson.dumps(raw))

    def test_amplitude_order_too_large(self, ops333: StateSet):
        """An amplitude order past the configured maximum is malformed."""
        raw = orjson.loads(dumps(StateSetDocument.from_domain(ops333)))
        raw["states"][0]["factors"][0]["amps"][0] = {"order": 10**6, "coeffs": [1]}
        with pytest.raises(MalformedInputError):
            parse_document(orjson.dumps(raw))

    def test_missing_file(self, tmp_path: Path):
        """Unreadable files are malformed input."""
        with pytest.raises(MalformedInputError):
            read_document(tmp_path / "missing.json")
