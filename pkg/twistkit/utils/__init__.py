from .general_utils import generate_seed, init_log, timer
from .parallel_utils import run_in_parallel
