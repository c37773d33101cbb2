from .chains import mtl_chain_to_fo, mtl_to_cowmtl
from .common import TranslationError, TranslationOutput
from .gmc_mtl import osafgmc_to_wmtl, osgmc_to_mtl
from .stdlib import STDLIB, stdlib
from .temporal import cctl_to_mpl, stl_to_mtl
