"""Blueprint for region moments."""
from flask import Blueprint, current_app, jsonify, request

from simpson_nd.errors import InvalidRegion
from simpson_nd.models.polynomial import graded_monomials, monomial_label
from simpson_nd.models.region import region_from_alias
from simpson_nd.models.scalar import scalar_to_dict, to_float

regions_bp = Blueprint('regions', __name__, url_prefix='/api/regions')


@regions_bp.route('/<alias>/moments', methods=['GET'])
def get_moments(alias):
    """Moments of every monomial up to ?degree= in graded lexicographic order."""
    try:
        region = region_from_alias(alias)
    except InvalidRegion as exc:
        current_app.logger.warning('unknown region %s', alias)
        return jsonify({'error': 'InvalidRegion', 'message': str(exc)}), 404
    degree = request.args.get('degree', 2, type=int)
    cap = current_app.config['SIMPSON_ND_MAX_DEGREE']
    if degree < 0 or degree > cap:
        return jsonify({'error': 'degree out of range', 'message': f'degree must be between 0 and {cap}'}), 400
    out = []
    for alpha in graded_monomials(region.dimension, degree):
        value = region.moment(alpha)
        out.append({'monomial': monomial_label(alpha), 'value': scalar_to_dict(value), 'decimal': to_float(value)})
    return jsonify(out)
