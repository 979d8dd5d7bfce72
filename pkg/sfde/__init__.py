""" Equations, coefficients and solvers """
