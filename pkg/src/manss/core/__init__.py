from .degrees import Degree, DegreeWindow, add_degrees, normalize_degree
from .coeffs import Coefficients
from .abgroups import AbGroup, same_groups
from .chart import ChartAlgebra, Generator
