# Management commands 