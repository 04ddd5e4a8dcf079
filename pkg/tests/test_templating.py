"""Template grammar: substitution, filters, conditionals, spans, errors."""

from __future__ import annotations

import pytest

from provcards.templating import Span, TemplateError, render_template


def test_scalar_substitution():
    text, spans = render_template("saw {n} items", {"n": 3})
    assert text == "saw 3 items"
    assert spans == [Span(4, 5, "n")]


def test_scalar_none_renders_empty():
    text, spans = render_template("[{x}]", {"x": None})
    assert text == "[]"
    assert spans == [Span(1, 1, "x")]


def test_list_filter_join_styles():
    slots = {"xs": ["a", "b", "c", "d"]}
    assert render_template("{xs|list:1}", slots)[0] == "a"
    assert render_template("{xs|list:2}", slots)[0] == "a and b"
    assert render_template("{xs|list:3}", slots)[0] == "a, b and c"
    assert render_template("{xs|list:9}", slots)[0] == "a, b, c and d"
    assert render_template("{xs|list:3}", {"xs": []})[0] == ""


def test_list_filter_stringifies_items():
    assert render_template("{xs|list:3}", {"xs": [1, 2]})[0] == "1 and 2"


def test_plural_filter_choices():
    tmpl = "{n} {n|plural:card:cards}"
    assert render_template(tmpl, {"n": 1})[0] == "1 card"
    assert render_template(tmpl, {"n": 0})[0] == "0 cards"
    assert render_template(tmpl, {"n": 7})[0] == "7 cards"


def test_conditional_renders_only_when_truthy():
    tmpl = "Start.{?flag And {n} more.}"
    assert render_template(tmpl, {"flag": True, "n": 2})[0] == "Start.And 2 more."
    assert render_template(tmpl, {"flag": False, "n": 2})[0] == "Start."
    assert render_template(tmpl, {"flag": 0, "n": 2})[0] == "Start."
    assert render_template(tmpl, {"flag": [], "n": 2})[0] == "Start."


def test_conditionals_nest():
    tmpl = "{?a A{?b B}}"
    assert render_template(tmpl, {"a": True, "b": True})[0] == "AB"
    assert render_template(tmpl, {"a": True, "b": False})[0] == "A"
    assert render_template(tmpl, {"a": False, "b": True})[0] == ""


def test_false_conditional_skips_inner_lookups():
    # Slots inside a dead branch are never resolved.
    text, spans = render_template("{?off {missing|list:3}}", {"off": False})
    assert text == ""
    assert spans == []


def test_empty_conditional_body():
    assert render_template("x{?flag}y", {"flag": True})[0] == "xy"


def test_spans_cover_exact_substitutions():
    tmpl = "Ran {n} {n|plural:search:searches} about {xs|list:2}."
    text, spans = render_template(tmpl, {"n": 2, "xs": ["arms", "cargo"]})
    assert text == "Ran 2 searches about arms and cargo."
    by_slice = [(text[s.start:s.end], s.slot) for s in spans]
    assert by_slice == [
        ("2", "n"), ("searches", "n"), ("arms and cargo", "xs"),
    ]


def test_spans_inside_conditionals_use_output_offsets():
    tmpl = "{?flag Saw {n}.} End"
    text, spans = render_template(tmpl, {"flag": True, "n": 42})
    assert text == "Saw 42. End"
    assert [text[s.start:s.end] for s in spans] == ["42"]
    assert spans[0] == Span(4, 6, "n")


def test_links_attach_to_matching_slots():
    _, spans = render_template(
        "{a} {b}", {"a": 1, "b": 2}, links={"a": "alpha"}
    )
    assert spans[0].link_key == "alpha"
    assert spans[1].link_key is None


def test_unresolved_placeholder_raises():
    with pytest.raises(TemplateError, match="missing"):
        render_template("{missing}", {})
    with pytest.raises(TemplateError, match="flag"):
        render_template("{?flag x}", {})


def test_unclosed_placeholder_raises_with_position():
    with pytest.raises(TemplateError, match="position 5"):
        render_template("abcde{name", {"name": 1})


def test_unclosed_conditional_raises():
    with pytest.raises(TemplateError, match="unclosed conditional"):
        render_template("{?flag abc", {"flag": True})


def test_unexpected_close_brace_raises():
    with pytest.raises(TemplateError, match="unexpected"):
        render_template("abc}", {})


def test_bad_placeholder_name_raises():
    with pytest.raises(TemplateError, match="name"):
        render_template("{9lives}", {})
    with pytest.raises(TemplateError, match="name"):
        render_template("{}", {})


def test_unknown_filter_raises():
    with pytest.raises(TemplateError, match="unknown filter"):
        render_template("{x|upper}", {"x": 1})


def test_list_filter_validates_count():
    with pytest.raises(TemplateError, match="positive count"):
        render_template("{x|list}", {"x": []})
    with pytest.raises(TemplateError, match="positive count"):
        render_template("{x|list:0}", {"x": []})
    with pytest.raises(TemplateError, match="positive count"):
        render_template("{x|list:two}", {"x": []})


def test_plural_filter_validates_args():
    with pytest.raises(TemplateError, match="plural"):
        render_template("{x|plural:only}", {"x": 1})


def test_list_filter_rejects_non_lists():
    with pytest.raises(TemplateError, match="not a list"):
        render_template("{x|list:3}", {"x": "abc"})
    with pytest.raises(TemplateError, match="not a list"):
        render_template("{x|list:3}", {"x": 7})


def test_conditional_needs_space_or_close_after_flag():
    with pytest.raises(TemplateError, match="space"):
        render_template("{?flag|x}", {"flag": True})


def test_literal_text_passes_through():
    text, spans = render_template("no placeholders here", {})
    assert text == "no placeholders here"
    assert spans == []
