"""Hamilton-Pontryagin field theories on coordinate charts.

Subpackages: :mod:`hpfield.exterior` (blade algebra), :mod:`hpfield.jet`
(jet/Pontryagin data model), :mod:`hpfield.dirac` (canonical forms and
multi-Dirac checks), :mod:`hpfield.theories` (worked examples),
:mod:`hpfield.solver` (residuals, Newton, marching, DAE stepping).
"""

__version__ = "0.1.0"
