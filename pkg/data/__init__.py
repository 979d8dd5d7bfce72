# -*- coding: utf-8 -*-
""" Example experiment configurations shipped with gsfde
"""
import os.path as osp

HERE = osp.join(osp.abspath(osp.dirname(__file__)))

def config_path(name):
    """ Path of the shipped configuration ``name`` (without extension) """
    return osp.join(HERE, '%s.json' % name)
