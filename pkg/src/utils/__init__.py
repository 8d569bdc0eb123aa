from .logger import Logger, set_log_level
from .workers import worker_count, ordered_map
from .artifacts import ArtifactWriter, format_number
