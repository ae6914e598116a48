import io
from fractions import Fraction

import pytest

from stepfit.core.errors import InputFormatError, ValidationError
from stepfit.utils.generator import generate_triples, render_triples
from stepfit.utils.parsing import (
    format_decimal,
    format_fraction,
    parse_rational,
    read_point_records,
    read_site_records,
    to_rational,
)


class TestParseRational:
    @pytest.mark.parametrize(
        "token,expected",
        [
            ("3", Fraction(3)),
            ("-1.25", Fraction(-5, 4)),
            ("0.1", Fraction(1, 10)),
            (".5", Fraction(1, 2)),
            ("3e2", Fraction(300)),
            ("2/6", Fraction(1, 3)),
            ("-7/2", Fraction(-7, 2)),
        ],
    )
    def test_valid_literals(self, token, expected):
        assert parse_rational(token) == expected

    @pytest.mark.parametrize("token", ["abc", "1/0", "1.2.3", "", "nan", "inf"])
    def test_invalid_literals(self, token):
        with pytest.raises(InputFormatError):
            parse_rational(token)

    @pytest.mark.parametrize("token", ["1e-999999999", "2E+100000", "-.5e99999"])
    def test_huge_exponent_rejected(self, token):
        with pytest.raises(InputFormatError, match="exponent out of range"):
            parse_rational(token)

    @pytest.mark.parametrize(
        "token,expected",
        [
            ("1e-5", Fraction(1, 100000)),
            ("1e0009", Fraction(10**9)),
            ("5e-9999", Fraction(5, 10**9999)),
        ],
    )
    def test_exponent_within_range(self, token, expected):
        assert parse_rational(token) == expected

    def test_huge_exponent_reports_line(self):
        with pytest.raises(InputFormatError) as exc_info:
            read_point_records(io.StringIO("0 0 1\n1 1e-999999999 1\n"))
        assert exc_info.value.line_number == 2

    def test_to_rational_rejects_float(self):
        with pytest.raises(ValidationError):
            to_rational(0.5)


class TestReadPointRecords:
    def test_skips_comments_and_blank_lines(self):
        text = "# header\n\n0 0 1\n  # indented comment\n1 2.5 3/2\n"
        records = read_point_records(io.StringIO(text))
        assert records == [
            (Fraction(0), Fraction(0), Fraction(1)),
            (Fraction(1), Fraction(5, 2), Fraction(3, 2)),
        ]

    def test_wrong_field_count_reports_line(self):
        with pytest.raises(InputFormatError) as exc_info:
            read_point_records(io.StringIO("0 0 1\n1 2\n"))
        assert exc_info.value.line_number == 2
        assert str(exc_info.value).startswith("line 2:")

    def test_bad_number_reports_line(self):
        with pytest.raises(InputFormatError) as exc_info:
            read_point_records(io.StringIO("# c\n0 x 1\n"))
        assert exc_info.value.line_number == 2

    @pytest.mark.parametrize("w", ["0", "-1"])
    def test_non_positive_weight(self, w):
        with pytest.raises(InputFormatError, match="weight must be positive"):
            read_point_records(io.StringIO(f"0 0 {w}\n"))

    def test_empty_input(self):
        with pytest.raises(InputFormatError, match="empty point set"):
            read_point_records(io.StringIO("# only a comment\n"))


class TestReadSiteRecords:
    def test_weight_defaults_to_one(self):
        records = read_site_records(io.StringIO("0\n2 3\n"))
        assert records == [(Fraction(0), Fraction(1)), (Fraction(2), Fraction(3))]

    def test_too_many_fields(self):
        with pytest.raises(InputFormatError):
            read_site_records(io.StringIO("0 1 2\n"))


class TestFormatting:
    def test_format_fraction_keeps_denominator(self):
        assert format_fraction(Fraction(1)) == "1/1"
        assert format_fraction(Fraction(-3, 2)) == "-3/2"

    @pytest.mark.parametrize(
        "value,precision,expected",
        [
            (Fraction(3, 2), 12, "1.5"),
            (Fraction(1, 3), 4, "0.3333"),
            (Fraction(2, 3), 3, "0.667"),
            (Fraction(100), 12, "100"),
            (Fraction(0), 5, "0"),
        ],
    )
    def test_format_decimal(self, value, precision, expected):
        assert format_decimal(value, precision) == expected


class TestGenerator:
    def test_same_seed_same_instance(self):
        assert generate_triples(50, 7) == generate_triples(50, 7)
        assert generate_triples(50, 7) != generate_triples(50, 8)

    def test_ranges_respected(self):
        triples = generate_triples(200, 1, coord_range=(0, 3), weight_range=(2, 4))
        assert all(0 <= x <= 3 and 0 <= y <= 3 and 2 <= w <= 4 for x, y, w in triples)

    def test_rendered_file_parses_back(self):
        triples = generate_triples(5, 3)
        text = render_triples(triples, "n=5 seed=3")
        assert text.startswith("# n=5 seed=3\n")
        records = read_point_records(io.StringIO(text))
        assert [tuple(int(v) for v in r) for r in records] == triples

    @pytest.mark.parametrize("n", [0, -1])
    def test_non_positive_n(self, n):
        with pytest.raises(ValidationError):
            generate_triples(n, 0)
