# -*- coding: utf-8 -*-

from quadres.io.resonator_file import read_resonator_set, write_resonator_set
from quadres.io.scan_csv import write_scan_csv, read_scan_csv, write_table_csv
from quadres.io.manifest_json import RunManifest, to_dict, to_json, write_manifest_json, read_manifest_json
