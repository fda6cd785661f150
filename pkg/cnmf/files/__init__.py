from .matrix_file import MAGIC, read_matrix, write_matrix
from .trace_file import TRACE_HEADER, read_trace, write_trace

__all__ = ["MAGIC", "TRACE_HEADER", "read_matrix", "read_trace", "write_matrix", "write_trace"]
