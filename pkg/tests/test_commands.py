from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from editeval import (
    EditAction,
    EditCommand,
    MalformedBody,
    UnknownAction,
    normalize_command,
    parse_command,
    serialize_command,
)


def test_parse_plain():
    cmd = parse_command("delete(text, in table, removed)")
    assert cmd == EditCommand(EditAction.DELETE, "text", "in table", "removed")


def test_parse_uppercase_action_preserves_field_case():
    cmd = parse_command("ADD(text footer, none, Page 4)")
    assert cmd == EditCommand(EditAction.ADD, "text footer", "none", "Page 4")


def test_parse_quoted_fields():
    cmd = parse_command('modify(text, "1, 2000", "11, 2000")')
    assert cmd == EditCommand(EditAction.MODIFY, "text", "1, 2000", "11, 2000")


def test_parse_doubled_quote_escape():
    cmd = parse_command('add(a, "say ""hi""", b)')
    assert cmd.initial_state == 'say "hi"'


def test_parse_unknown_action():
    with pytest.raises(UnknownAction):
        parse_command("fix everything")


def test_parse_missing_parens():
    with pytest.raises(MalformedBody):
        parse_command("add just some text")


def test_parse_too_few_fields():
    with pytest.raises(MalformedBody):
        parse_command("add(one, two)")


def test_parse_empty():
    with pytest.raises(MalformedBody):
        parse_command("   ")


def test_parse_trailing_garbage():
    with pytest.raises(MalformedBody):
        parse_command("add(a, b, c) and then some")


def test_parse_legacy_extra_commas_first_last_rule():
    cmd = parse_command("modify(text, 1, 2000, 11)")
    assert cmd.component == "text"
    assert cmd.initial_state == "1, 2000"
    assert cmd.final_state == "11"


@pytest.mark.parametrize("word", [a.value for a in EditAction])
@pytest.mark.parametrize("case", [str.lower, str.upper, str.title])
def test_all_actions_any_case(word, case):
    cmd = parse_command(f"{case(word)}(a, b, c)")
    assert cmd.action.value == word


def test_serialize_plain():
    cmd = EditCommand(EditAction.DELETE, "text", "in table", "removed")
    assert serialize_command(cmd) == "delete(text, in table, removed)"


def test_serialize_quotes_commas():
    cmd = EditCommand(EditAction.MODIFY, "text", "1, 2000", "11, 2000")
    assert serialize_command(cmd) == 'modify(text, "1, 2000", "11, 2000")'


def test_serialize_normalizes():
    cmd = EditCommand(EditAction.ADD, " Text  Footer ", "None", "Page 4")
    assert serialize_command(cmd) == "add(text footer, none, page 4)"


def test_normalize():
    cmd = EditCommand(EditAction.ADD, " Text  Footer ", "None", "Page 4")
    norm = normalize_command(cmd)
    assert norm == EditCommand(EditAction.ADD, "text footer", "none", "page 4")


def test_normalize_idempotent_example():
    cmd = EditCommand(EditAction.DELETE, "text", "in table", "removed")
    assert normalize_command(cmd) == cmd
    assert normalize_command(normalize_command(cmd)) == normalize_command(cmd)


commands = st.builds(
    EditCommand,
    action=st.sampled_from(list(EditAction)),
    component=st.text(max_size=30),
    initial_state=st.text(max_size=30),
    final_state=st.text(max_size=30),
)


@given(commands)
@settings(max_examples=300)
def test_round_trip_parse_serialize(cmd):
    assert parse_command(serialize_command(cmd)) == normalize_command(cmd)


@given(commands)
def test_normalize_idempotent(cmd):
    once = normalize_command(cmd)
    assert normalize_command(once) == once


@given(commands, commands)
def test_serialization_injective_on_normalized(a, b):
    na, nb = normalize_command(a), normalize_command(b)
    if na != nb:
        assert serialize_command(a) != serialize_command(b)
    else:
        assert serialize_command(a) == serialize_command(b)
