"""Canonical descriptor JSON: writer, schema validation, round-trip."""

import json

import pytest

from speejis.descriptor import (
    AugmentationDescriptor,
    STATUS_DONE,
    canonical_json,
    parse_descriptor,
    serialize_descriptor,
    to_obj,
)
from speejis.errors import SchemaError
from speejis.pipeline import PipelineConfig, augment

from conftest import sine_clip


@pytest.fixture
def descriptor(default_table):
    clip = sine_clip(880, 3.0, amplitude=0.6)
    return augment(clip, default_table, PipelineConfig(), message_id="fixed-id")


class TestCanonicalJson:
    def test_floats_are_six_decimal_fixed_point(self):
        assert canonical_json({"x": 1.5}) == '{"x":1.500000}'
        assert canonical_json(0.1234567) == "0.123457"

    def test_negative_zero_normalized(self):
        assert canonical_json(-0.0) == "0.000000"

    def test_ints_and_bools_stay_native(self):
        assert canonical_json({"i": 3, "b": True, "n": None}) == '{"i":3,"b":true,"n":null}'

    def test_emoji_glyphs_stay_utf8(self):
        assert canonical_json("😀") == '"😀"'

    def test_key_order_is_insertion_order(self):
        assert canonical_json({"b": 1, "a": 2}) == '{"b":1,"a":2}'


class TestRoundTrip:
    def test_serialize_parse_serialize_is_identity(self, descriptor):
        text = serialize_descriptor(descriptor)
        again = serialize_descriptor(parse_descriptor(text))
        assert again == text

    def test_parse_accepts_dict_form(self, descriptor):
        obj = json.loads(serialize_descriptor(descriptor))
        parsed = parse_descriptor(obj)
        assert serialize_descriptor(parsed) == serialize_descriptor(descriptor)

    def test_parsed_fields_match(self, descriptor):
        parsed = parse_descriptor(serialize_descriptor(descriptor))
        assert parsed.message_id == "fixed-id"
        assert parsed.status == STATUS_DONE
        assert len(parsed.chunks) == len(descriptor.chunks)
        assert len(parsed.bars) == len(descriptor.bars)
        assert parsed.overall_emoji.glyph == descriptor.overall_emoji.glyph


class TestValidation:
    def _obj(self, descriptor):
        return json.loads(serialize_descriptor(descriptor))

    def test_missing_bars_names_bars(self, descriptor):
        obj = self._obj(descriptor)
        del obj["bars"]
        with pytest.raises(SchemaError) as err:
            parse_descriptor(obj)
        assert err.value.path == "/bars"

    def test_missing_message_id_reported_first(self, descriptor):
        obj = self._obj(descriptor)
        del obj["message_id"]
        del obj["bars"]
        with pytest.raises(SchemaError) as err:
            parse_descriptor(obj)
        assert err.value.path == "/message_id"

    def test_bad_status(self, descriptor):
        obj = self._obj(descriptor)
        obj["status"] = "pending"
        with pytest.raises(SchemaError) as err:
            parse_descriptor(obj)
        assert err.value.path == "/status"

    def test_done_requires_overall_emoji(self, descriptor):
        obj = self._obj(descriptor)
        obj["overall_emoji"] = None
        with pytest.raises(SchemaError) as err:
            parse_descriptor(obj)
        assert err.value.path == "/overall_emoji"

    def test_height_range_enforced(self, descriptor):
        obj = self._obj(descriptor)
        obj["bars"][2]["height"] = 1.7
        with pytest.raises(SchemaError) as err:
            parse_descriptor(obj)
        assert err.value.path == "/bars/2/height"

    def test_vad_range_enforced(self, descriptor):
        obj = self._obj(descriptor)
        obj["overall"]["valence"] = -2.0
        with pytest.raises(SchemaError) as err:
            parse_descriptor(obj)
        assert err.value.path == "/overall/valence"

    def test_wrong_attribution_rejected(self, descriptor):
        obj = self._obj(descriptor)
        obj["generated_by"] = "user"
        with pytest.raises(SchemaError) as err:
            parse_descriptor(obj)
        assert err.value.path == "/generated_by"

    def test_invalid_json_text(self):
        with pytest.raises(SchemaError):
            parse_descriptor("{nope")

    def test_attribution_always_present(self, descriptor):
        assert to_obj(descriptor)["generated_by"] == "ai"


class TestConstructorGuards:
    def test_done_without_emojis_rejected(self, descriptor):
        with pytest.raises(ValueError):
            AugmentationDescriptor(
                message_id="x",
                duration_s=1.0,
                status=STATUS_DONE,
                engine_version="0",
                chunks=(),
                overall=None,
                ending_span=(0.0, 1.0),
                ending=None,
                overall_emoji=None,
                ending_emoji=None,
                bars=(),
                interest_segments=(),
                transcript=(),
            )
