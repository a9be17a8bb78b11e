# Mustafin degenerations of flag varieties
