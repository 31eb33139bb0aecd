from .commands import build_parser, main, run, survey_frame
from .parsing import parse_coefficients, parse_element, parse_index_list, parse_monomial
