""" gsfde: stochastic functional differential equations driven by
G-Levy processes, simulated by Euler and Picard schemes, with empirical
checks of their moment bounds.
"""
