import pytest

from triflag.textio import ParseError, format_flag, parse_blocks, read_flag, read_subspace


def test_flag_round_trip_bytes():
    text = "3 3\n1 2 0\n0 1 1\n0 0 1\n"
    assert format_flag(read_flag(text)) == text


def test_multiple_blocks_and_comments():
    blocks = parse_blocks("3 2  # header\n1 0\n\n3 2\n0 1\n")
    assert len(blocks) == 2 and blocks[1][1].tolist() == [[0, 1]]


@pytest.mark.parametrize("text,msg", [("4 2\n1 0\n", "line 1"), ("3 2\n1 0 1\n", "line 2"),
                                      ("3 2\n1 x\n", "line 2"), ("3 2\n5 0\n", "line 2"), ("", "no matrix")])
def test_errors_name_the_line(text, msg):
    with pytest.raises(ParseError, match=msg):
        parse_blocks(text)


def test_dependent_flag_rejected():
    with pytest.raises(ParseError):
        read_flag("3 2\n1 0\n2 0\n")


def test_subspace_reduces():
    assert read_subspace("5 3\n1 1 0\n2 2 0\n").dim == 1
