__all__ = ['Report', 'SCHEMA', 'vec_to_json', 'json_document']

import io
import csv
import sys
import json
import logging

import numpy as np

logger = logging.getLogger(__name__)

SCHEMA = 'funk-lab/1'


def vec_to_json(v):
    return [float(x) for x in np.asarray(v, dtype=float).ravel()]


def _default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, (tuple, set)):
        return list(obj)
    if hasattr(obj, 'to_dict'):
        return obj.to_dict()
    raise TypeError('%s is not serializable' % type(obj).__name__)


def json_document(doc):
    return json.dumps(doc, sort_keys=True, indent=2, default=_default) + '\n'


class Report( object ):


    def __init__(self, command=None, settings=None):
        self.__command = command
        self.__settings = dict(settings or {})
        self.__result = {}
        self.__collections = []


    def set_result(self, result):
        self.__result = dict(result)


    #
    # Add a table (header + rows) into the report
    #
    def append(self, name, header, rows):
        self.__collections.append((name, list(header), [list(r) for r in rows]))


    def document(self):
        doc = {'schema': SCHEMA,
               'command': self.__command,
               'settings': self.__settings,
               'result': self.__result}
        if self.__collections:
            doc['tables'] = {name: {'header': header, 'rows': rows} for name, header, rows in self.__collections}
        return doc


    #
    # Render the report. csv writes the first table, or key/value rows
    # of the top level result when there is no table.
    #
    def dumps(self, fmt='json'):
        if fmt == 'json':
            return json_document(self.document())
        if fmt != 'csv':
            raise ValueError('unknown output format %r' % fmt)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator='\n')
        if self.__collections:
            _, header, rows = self.__collections[0]
            writer.writerow(header)
            writer.writerows(rows)
        else:
            writer.writerow(['key', 'value'])
            for key in sorted(self.__result):
                value = self.__result[key]
                if isinstance(value, (dict, list, tuple, np.ndarray)):
                    value = json.dumps(value, sort_keys=True, default=_default)
                writer.writerow([key, value])
        return buf.getvalue()


    def save(self, output, fmt='json'):
        with open(output, 'w') as f:
            f.write(self.dumps(fmt))
        logger.info('report written to %s', output)


    def show(self, fmt='json', stream=None):
        (stream or sys.stdout).write(self.dumps(fmt))
