import json

import pytest
from jinja2.exceptions import UndefinedError
from sympy.polys.domains import QQ

from svsegre.models import ValidationError
from svsegre.renderer import ReportRenderer, get_templates_dir
from svsegre.utils import parse_int_list, plain_rational, to_plain, write_report


@pytest.fixture
def sv_payload():
    """Payload of an SV run on the twisted cubic."""
    return {
        'n': 3, 'twist': 2, 'mu_dim': 3, 'v_degrees': [0, 0, 3, 2], 'residual_degree': 0,
        'out_trace': [[3, 1], [2, 2], [1, 1], [-1, 0]], 'seed': 1, 'retries': 0,
        'mass_check': {'lhs': 8, 'rhs': 8, 'ok': True},
    }


class TestReportRenderer:
    """Tests for report rendering."""

    def test_templates_dir_exists(self):
        """Test the packaged templates are found."""
        assert get_templates_dir().endswith('templates')

    def test_render_sv_table(self, sv_payload):
        """Test the SV table lists every step and the mass check."""
        text = ReportRenderer().render('sv', sv_payload)
        assert 'L = O(2)' in text
        assert 'residual degree: 0' in text
        assert '8 = 8  ok' in text

    def test_render_stopped_run(self, sv_payload):
        """Test steps after an early stop are shown without an outside part."""
        sv_payload.update(v_degrees=[0, 0, 4, 0], out_trace=[[3, 1], [2, 2], [-1, 0]])
        rows = [line.split() for line in ReportRenderer().render('sv', sv_payload).splitlines()]
        assert ['2', '4', '(-1,', '0)'] in rows
        assert ['3', '0', '-'] in rows

    def test_render_with_extension(self, sv_payload):
        """Test the template name may carry its extension."""
        assert ReportRenderer().render('sv.txt.j2', sv_payload) == \
            ReportRenderer().render('sv', sv_payload)

    def test_missing_template(self, sv_payload):
        """Test an unknown template is a validation error."""
        with pytest.raises(ValidationError, match="Template not found"):
            ReportRenderer().render('nope', sv_payload)

    def test_missing_value(self):
        """Test a payload without the template's fields fails loudly."""
        with pytest.raises(UndefinedError):
            ReportRenderer().render('sv', {'n': 3})

    def test_custom_templates_dir(self, temp_output_dir):
        """Test templates from another directory."""
        with open(f"{temp_output_dir}/hello.txt.j2", 'w') as f:
            f.write('hello {{ name }}\n')
        assert ReportRenderer(temp_output_dir).render('hello', {'name': 'P^3'}) == 'hello P^3\n'

    def test_json_is_stable(self, sv_payload):
        """Test equal payloads give byte-identical JSON."""
        first = ReportRenderer.render_json(sv_payload)
        assert first == ReportRenderer.render_json(dict(sv_payload))
        assert json.loads(first)['v_degrees'] == [0, 0, 3, 2]

    def test_json_rationals(self):
        """Test rationals are written as ints or "p/q" strings."""
        text = ReportRenderer.render_json({'segre': [QQ(3), QQ(-1, 2)]})
        assert json.loads(text) == {'segre': [3, '-1/2']}


class TestUtils:
    """Tests for helper utilities."""

    def test_plain_rational(self):
        """Test integral and fractional values."""
        assert plain_rational(QQ(-16)) == -16
        assert plain_rational(QQ(3, 2)) == '3/2'

    def test_to_plain_keeps_builtins(self):
        """Test bools, strings and None pass through."""
        assert to_plain({'ok': True, 'name': 'x', 'v': (1, 2), 'none': None}) == \
            {'ok': True, 'name': 'x', 'v': [1, 2], 'none': None}

    def test_parse_int_list(self):
        """Test comma-separated integers."""
        assert parse_int_list('2,2') == (2, 2)
        assert parse_int_list(' 1, -1 ') == (1, -1)
        assert parse_int_list(None) == ()

    def test_parse_int_list_rejects_text(self):
        """Test non-integers are refused with the option name."""
        with pytest.raises(ValidationError, match="--twists"):
            parse_int_list('2,a', '--twists')

    def test_write_report(self, temp_output_dir):
        """Test reports get a trailing newline and nested directories."""
        path = write_report('hello', f"{temp_output_dir}/a/b/report.txt")
        with open(path) as f:
            assert f.read() == 'hello\n'
