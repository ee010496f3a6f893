# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-01
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Trapped ion junction grid SIMD compiler.

Modules
-------
raggregation : Aggregation methods.
rall : All methods.
rarch : Architecture methods.
rbase : Base methods.
rcircuit : Circuit methods.
rcli : Command line methods.
rdata : Data methods.
rheuristic : Heuristic methods.
risa : Instruction set methods.
rlog : Log methods.
rmetrics : Metrics methods.
ros : Operation system methods.
rrand : Random methods.
rscheduler : Scheduler methods.
rtable : Table methods.
rtask : Multi task methods.
rtext : Text methods.
rtime : Time methods.
"""
