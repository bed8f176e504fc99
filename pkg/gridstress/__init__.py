"""
gridstress - Grid-stress indicators and weather-corrected demand for balancing authorities.

This toolkit works on hourly balancing-authority data (demand, day-ahead forecast,
net interchange) and hourly ambient temperature, and provides:
- Stress indicators: daily peak/trough, ramp rate, forecast error, interchange
- Gaussian-kernel density estimates of indicator distributions
- Hour-of-week degree-day regression for counterfactual (weather-corrected) demand
"""

__version__ = "1.0.0"
__author__ = "gridstress developers"
