#!filepath squeezing_measure/utils/__init__.py
from .matrix_io import read_matrix_file, read_raw_matrix_file, write_matrix_file, parse_matrix_text
from .report_utils import key_value_table, matrix_table, frame_table, save_json

__all__ = ['read_matrix_file', 'read_raw_matrix_file', 'write_matrix_file', 'parse_matrix_text',
           'key_value_table', 'matrix_table', 'frame_table', 'save_json']
