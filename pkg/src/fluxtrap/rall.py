# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-01
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : All methods.
"""


from .raggregation import *
from .rarch import *
from .rbase import *
from .rcircuit import *
from .rcli import *
from .rdata import *
from .rheuristic import *
from .risa import *
from .rlog import *
from .rmetrics import *
from .ros import *
from .rrand import *
from .rscheduler import *
from .rtable import *
from .rtask import *
from .rtext import *
from .rtime import *
