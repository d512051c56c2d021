from umbilics.directions import direction_at, metric_angle, root_directions
from umbilics.finite import find_finite_umbilics, search_finite_umbilics
from umbilics.infinity import count_bounds, hf_at_infinity, infinity_index, infinity_umbilics, sphere_index_sum
from umbilics.certificates import lemon_certificate
from umbilics.ledger import ph_check
from umbilics.models import (CountBounds, HfValue, InfinityUmbilic, LemonCertificate, PHLedger,
                             UmbilicPoint, WindingResult)
from umbilics.winding import winding_index

__all__ = [
    'CountBounds', 'HfValue', 'InfinityUmbilic', 'LemonCertificate', 'PHLedger', 'UmbilicPoint',
    'WindingResult', 'count_bounds', 'direction_at', 'find_finite_umbilics', 'hf_at_infinity',
    'infinity_index', 'infinity_umbilics', 'lemon_certificate', 'metric_angle', 'ph_check',
    'root_directions', 'search_finite_umbilics', 'sphere_index_sum', 'winding_index',
]
