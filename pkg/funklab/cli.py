__all__ = ['build_parser', 'run', 'main']

import sys
import logging
import argparse

import numpy as np

import funklab as fl
from funklab.config import RunConfig
from funklab.report import Report, SCHEMA, json_document, vec_to_json
from funklab.geometry import make_center, make_infinite_center, make_plane, plane_from_points
from funklab.functions import parse_function, parse_vector, parse_vector_list
from funklab.analyzer import ReflectionFamily, NON_INJECTIVE
from funklab.errors import FunkLabError, SearchFailed, UsageError

logger = logging.getLogger(__name__)

INFINITE_PREFIX = 'inf:'


class _Parser( argparse.ArgumentParser ):

    def error(self, message):
        raise UsageError('%s: %s' % (self.prog, message))


#
# Argument helpers
#

def _center(text):
    text = text.strip()
    if text.startswith(INFINITE_PREFIX):
        return make_infinite_center(parse_vector(text[len(INFINITE_PREFIX):]))
    return make_center(parse_vector(text))


def _require(args, *names):
    missing = ['--' + n.replace('_', '-') for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError('%s requires %s' % (args.command, ', '.join(missing)))


def _plane(args, n):
    if args.plane_points is not None:
        return plane_from_points(parse_vector_list(args.plane_points, n))
    if args.plane_basis is not None and args.plane_offset is not None:
        basis = parse_vector_list(args.plane_basis, n)
        return make_plane(np.array(basis).T, parse_vector(args.plane_offset, n))
    raise UsageError('transform requires --plane-points or --plane-basis with --plane-offset')


def _config_from_args(args):
    kwargs = {'output_format': args.format, 'output': args.output}
    for name in ('seed', 'qmax', 'eps'):
        if getattr(args, name) is not None:
            kwargs[name] = getattr(args, name)
    if args.order is not None:
        kwargs['circle_order'] = args.order
        kwargs['product_order'] = args.order
    if getattr(args, 'verify_planes', None) is not None:
        kwargs['verify_planes'] = args.verify_planes
    return RunConfig.from_env(**kwargs)


#
# Commands
#

def command_analyze(args, config, report):
    if args.center:
        if any(getattr(args, n) is not None for n in ('a', 'b', 'dir', 'd1', 'd2')):
            raise UsageError('--center cannot be combined with --a/--b/--dir/--d1/--d2')
        centers = [_center(c) for c in args.center]
        verdict = fl.decide_multi(centers, config)
    elif args.a is not None and args.b is not None:
        centers = [_center(args.a), _center(args.b)]
        verdict = fl.decide(centers[0], centers[1], config)
    elif args.a is not None and args.dir is not None:
        centers = [make_center(parse_vector(args.a)), make_infinite_center(parse_vector(args.dir))]
        verdict = fl.decide_finite_infinite(centers[0].vector, centers[1].vector, config)
    elif args.d1 is not None and args.d2 is not None:
        centers = [make_infinite_center(parse_vector(args.d1)), make_infinite_center(parse_vector(args.d2))]
        verdict = fl.decide_infinite_pair(centers[0].vector, centers[1].vector, config)
    else:
        raise UsageError('analyze needs --a/--b, --a/--dir, --d1/--d2 or repeated --center')
    result = verdict.to_dict()
    result['centers'] = [c.to_dict() for c in centers]
    report.set_result(result)


def command_classify(args, config, report):
    _require(args, 'a', 'b')
    a, b = _center(args.a), _center(args.b)
    mclass = fl.classify(a, b, config=config)
    result = mclass.to_dict()
    result['discriminant'] = fl.pair_discriminant(a, b)
    result['multiplier'] = fl.multiplier(mclass)
    result['centers'] = [a.to_dict(), b.to_dict()]
    if a.is_finite and b.is_finite:
        result['fixed_points'] = fl.fixed_points(a.vector, b.vector).to_dict()
    report.set_result(result)


def command_orbit(args, config, report):
    _require(args, 'a', 'b', 'x0')
    a, b = _center(args.a), _center(args.b)
    points = fl.orbit(a, b, parse_vector(args.x0, a.dim), args.max_iter)
    header, rows = fl.orbit_table(points)
    report.append('orbit', header, rows)
    report.set_result({'centers': [a.to_dict(), b.to_dict()],
                       'length': int(points.shape[0]),
                       'returned': int(points.shape[0]) <= args.max_iter,
                       'max_iter': args.max_iter})


def command_transform(args, config, report):
    _require(args, 'function')
    if (args.center is None) == (args.direction is None):
        raise UsageError('transform needs exactly one of --center or --direction')
    if args.center is not None:
        center = make_center(parse_vector(args.center))
    else:
        center = make_infinite_center(parse_vector(args.direction))
    E = _plane(args, center.dim)
    f = parse_function(args.function, center.dim)
    value = fl.apply_transform(center, f, E)
    report.set_result({'value': value,
                       'center': center.to_dict(),
                       'plane': E.to_dict(),
                       'k': E.k,
                       'order': config.circle_order if E.k <= 2 else config.product_order,
                       'function': f.describe()})


def command_kernel(args, config, report):
    _require(args, 'a')
    if (args.b is None) == (args.direction is None):
        raise UsageError('kernel needs exactly one of --b or --direction')
    a = make_center(parse_vector(args.a))
    b = _center(args.b) if args.b is not None else make_infinite_center(parse_vector(args.direction, a.dim))
    k = a.dim - 1 if args.k is None else args.k
    if not 1 <= k < a.dim:
        raise UsageError('--k must lie between 1 and %d' % (a.dim - 1))
    verdict = fl.decide(a, b, config)
    result = {'centers': [a.to_dict(), b.to_dict()], 'k': k, 'verdict': verdict.to_dict()}
    if verdict.verdict != NON_INJECTIVE:
        result['witness'] = None
        result['reason'] = 'pair is not periodic: %s' % verdict.reason
        report.set_result(result)
        return
    f = fl.build_kernel_element(a, b, verdict.period, k, config)
    recipe = f.recipe()
    # bumps on circles need far more nodes than smooth integrands
    order = config.kernel_order if k == 2 and args.order is None else None
    checks = {}
    for name, center in (('a', a), ('b', b)):
        checks[name] = fl.verify_annihilation(f, center, config.verify_planes, order=order, k=k,
                                              config=config).to_dict()
    result.update({'q': verdict.period,
                   'rotation': list(verdict.rotation),
                   'basepoint': recipe['e'],
                   'margin': recipe['margin'],
                   'cap_radius': recipe['cap_radius'],
                   'value_at_basepoint': f(f.basepoint()),
                   'max_abs': {name: c['max_abs'] for name, c in checks.items()},
                   'annihilation': checks,
                   'recipe': recipe})
    report.set_result(result)


def command_coxeter(args, config, report):
    if not args.normal:
        raise UsageError('coxeter needs at least one --normal')
    B = ReflectionFamily([parse_vector(v) for v in args.normal])
    verdict = fl.decide_slice_family(B, config=config)
    closure = fl.reflection_group_finite(B, config=config)
    orders = fl.coxeter_orders(B, config)
    result = verdict.to_dict()
    result['normals'] = [vec_to_json(b) for b in B.normals()]
    result['group'] = closure.to_dict()
    result['orders'] = [{'pair': list(ij), 'order': m} for ij, m in sorted(orders.items())]
    report.set_result(result)


def build_parser() -> argparse.ArgumentParser:

    common = _Parser(add_help=False)
    common.add_argument('--format', choices=['json', 'csv'], default='json')
    common.add_argument('--output', default=None, help='write the result document to this file')
    common.add_argument('--seed', type=int, default=None)
    common.add_argument('--qmax', type=int, default=None, help='largest period searched')
    common.add_argument('--eps', type=float, default=None, help='rotation number match tolerance')
    common.add_argument('--order', type=int, default=None, help='quadrature order')
    common.add_argument('--log-level', default='WARNING',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'])

    parser = _Parser(prog='funk-lab', description='Injectivity of paired shifted Funk transforms')
    sub = parser.add_subparsers(dest='command', required=True)

    analyze = sub.add_parser('analyze', parents=[common], help='injectivity verdict')
    analyze.add_argument('--a')
    analyze.add_argument('--b')
    analyze.add_argument('--dir')
    analyze.add_argument('--d1')
    analyze.add_argument('--d2')
    analyze.add_argument('--center', action='append', help='repeatable; prefix directions with inf:')
    analyze.set_defaults(func=command_analyze)

    classify = sub.add_parser('classify', parents=[common], help='Moebius class of the V-map')
    classify.add_argument('--a')
    classify.add_argument('--b')
    classify.set_defaults(func=command_classify)

    orbit = sub.add_parser('orbit', parents=[common], help='orbit of a point under the V-map')
    orbit.add_argument('--a')
    orbit.add_argument('--b')
    orbit.add_argument('--x0')
    orbit.add_argument('--max-iter', type=int, default=1000)
    orbit.set_defaults(func=command_orbit)

    transform = sub.add_parser('transform', parents=[common], help='evaluate one transform value')
    transform.add_argument('--center')
    transform.add_argument('--direction')
    transform.add_argument('--function')
    transform.add_argument('--plane-points', help='semicolon separated points spanning the plane')
    transform.add_argument('--plane-basis', help='semicolon separated direction vectors')
    transform.add_argument('--plane-offset')
    transform.set_defaults(func=command_transform)

    kernel = sub.add_parser('kernel', parents=[common], help='build and verify a common kernel element')
    kernel.add_argument('--a')
    kernel.add_argument('--b')
    kernel.add_argument('--direction')
    kernel.add_argument('--k', type=int, default=None, help='plane dimension, n-1 by default')
    kernel.add_argument('--verify-planes', type=int, default=None)
    kernel.set_defaults(func=command_kernel)

    coxeter = sub.add_parser('coxeter', parents=[common], help='reflection group of slice directions')
    coxeter.add_argument('--normal', action='append')
    coxeter.set_defaults(func=command_coxeter)

    return parser


def _write_error(error, stream):
    doc = {'schema': SCHEMA}
    if isinstance(error, FunkLabError):
        doc.update(error.to_dict())
    else:
        doc.update({'error': 'invalid_value', 'message': str(error)})
    stream.write(json_document(doc))


def run(argv=None, stream=None) -> int:
    """
    Runs one command and writes its document.

    Returns
    -------
    int
        0 on success, 2 on invalid input, 1 when a kernel construction fails.
    """
    stream = stream or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=getattr(logging, args.log_level), stream=sys.stderr,
                            format='%(levelname)s %(name)s: %(message)s')
        config = _config_from_args(args)
    except (FunkLabError, ValueError) as e:
        _write_error(e, stream)
        return 2

    previous = fl.get_config()
    fl.set_config(config)
    report = Report(args.command, config.to_dict())
    try:
        args.func(args, config, report)
    except SearchFailed as e:
        logger.error('%s', e)
        _write_error(e, stream)
        return 1
    except (FunkLabError, ValueError) as e:
        logger.debug('invalid input: %s', e)
        _write_error(e, stream)
        return 2
    finally:
        fl.set_config(previous)

    if config.output:
        report.save(config.output, config.output_format)
    else:
        report.show(config.output_format, stream)
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
