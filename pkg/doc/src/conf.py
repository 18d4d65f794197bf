# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder of quadres.
# http://www.sphinx-doc.org/en/master/config

import os
import sys
sys.path.insert(0, os.path.abspath('../../src/'))  # Folder with python package

import quadres  # noqa: E402

# -- Project information -----------------------------------------------------

project = 'quadres'
copyright = '2026, quadres developers'
author = 'quadres developers'

version = '.'.join(quadres.__version__.split('.')[:2])
release = quadres.__version__

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.viewcode',
    'sphinx.ext.mathjax',
    'sphinxcontrib.autodoc_pydantic',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'
language = 'en'
exclude_patterns = []
pygments_style = None

# -- Options for HTML output -------------------------------------------------

html_theme = 'nature'
html_theme_options = {'sidebarwidth': '25em'}
html_static_path = []
htmlhelp_basename = 'quadres'

# -- Options for LaTeX and manual page output --------------------------------

latex_documents = [
    (master_doc, 'quadres.tex', 'quadres Documentation', author, 'manual'),
]

man_pages = [
    (master_doc, 'quadres', 'quadres Documentation', [author], 1)
]

# -- Options for autodoc extension -------------------------------------------

autodoc_default_options = {
    'show-inheritance': True, }
autoclass_content = 'class'
autodoc_member_order = 'bysource'

# -- Options for autodoc-pydantic extension ----------------------------------
autodoc_pydantic_model_show_config_summary = False
autodoc_pydantic_model_settings_summary_list_order = 'bysource'
autodoc_pydantic_model_show_validator_members = False
autodoc_pydantic_model_signature_prefix = 'class'
autodoc_pydantic_model_show_json = False
