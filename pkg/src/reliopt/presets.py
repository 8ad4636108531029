"""Parameter sets estimated on the 2016 Italian PUN hourly series.

Values are rounded to the precision they were published with. Volatilities
and mean-reversion speeds are yearly; seasonality entries are log-price
offsets against January / Friday / hour 1.
"""

from .seasonality import SeasonalityParams

PUN_MEAN_PRICE = 42.77
GBM_SIGMA = 5.4041
OU_SIGMA = 6.5932
OU_LAMBDA = 294.84

RISK_FREE_RATE = 0.01
STRIKE = 40.0
T1, T2 = 4.0, 7.0
STRIKE_Y0 = -0.21  # deseasonalised log level of an initial strike of 40 EUR/MWh

PUN_2016_SEASONALITY = SeasonalityParams(
    alpha=3.79,
    beta=[-0.22, -0.27, -0.36, -0.28, -0.23, -0.07, -0.21, -0.07, 0.14, 0.23, 0.21],
    # Friday (base), Weekend, Monday, other working day
    delta=[0.0, -0.14, -0.01, 0.02],
    gamma=[
        -0.08, -0.15, -0.18, -0.18, -0.13, -0.01, 0.10, 0.18, 0.16, 0.12, 0.07,
        0.0, -0.05, -0.02, 0.04, 0.09, 0.15, 0.22, 0.28, 0.27, 0.20, 0.12, 0.03,
    ],
)
