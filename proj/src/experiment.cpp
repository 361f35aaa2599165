// placeholder, filled in with the experiment runner
