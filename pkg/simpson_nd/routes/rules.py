"""Blueprint for the named rule catalog."""
from flask import Blueprint, current_app, jsonify, request

from simpson_nd.errors import UnknownRule
from simpson_nd.exactness import exactness_degree
from simpson_nd.models.rule import CATALOG, named_rule, rule_properties
from simpson_nd.models.scalar import format_scalar, to_float

rules_bp = Blueprint('rules', __name__, url_prefix='/api/rules')

MAX_HTTP_DIMENSION = 8


def _lookup(name):
    """Named rule for the request, or a (response, status) pair."""
    dim = request.args.get('dim', type=int)
    if dim is not None and not 1 <= dim <= MAX_HTTP_DIMENSION:
        return None, (jsonify({'error': 'dim out of range', 'message': f'dim must be between 1 and {MAX_HTTP_DIMENSION}'}), 400)
    try:
        return named_rule(name, dim), None
    except UnknownRule as exc:
        current_app.logger.warning('unknown rule %s', name)
        return None, (jsonify({'error': 'UnknownRule', 'message': str(exc)}), 404)


@rules_bp.route('', methods=['GET'])
def list_rules():
    """Every catalog rule with exact and decimal weights."""
    dim = request.args.get('dim', 2, type=int)
    if not 1 <= dim <= MAX_HTTP_DIMENSION:
        return jsonify({'error': 'dim out of range', 'message': f'dim must be between 1 and {MAX_HTTP_DIMENSION}'}), 400
    out = []
    for name, entry in CATALOG.items():
        rule = named_rule(name, dim if entry.takes_dimension else None)
        out.append({
            'name': name,
            'region': rule.region.label,
            'nodes': len(rule),
            'weights': [format_scalar(w) for w in rule.weights],
            'decimals': [to_float(w) for w in rule.weights],
            'claimed_degree': rule.claimed_degree,
            'properties': rule_properties(rule),
        })
    return jsonify(out)


@rules_bp.route('/<name>', methods=['GET'])
def get_rule(name):
    rule, error = _lookup(name)
    if error:
        return error
    return jsonify(rule.to_dict())


@rules_bp.route('/<name>/exactness', methods=['GET'])
def get_exactness(name):
    """Certified degree; max_degree defaults to the claimed degree plus two."""
    rule, error = _lookup(name)
    if error:
        return error
    cap = current_app.config['SIMPSON_ND_MAX_DEGREE']
    max_degree = request.args.get('max_degree', type=int)
    if max_degree is None:
        max_degree = (rule.claimed_degree or 2) + 2
    if max_degree < 0 or max_degree > cap:
        return jsonify({'error': 'max_degree out of range', 'message': f'max_degree must be between 0 and {cap}'}), 400
    return jsonify(exactness_degree(rule, max_degree).to_dict())
