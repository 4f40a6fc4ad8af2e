# mcbsim - multi-message CONGEST broadcast simulator
# This package contains all the simulator modules
