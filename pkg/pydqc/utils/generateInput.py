import os, copy, yaml

protocolNames = ["Plain","Basic","Medium","Refined"]
figureLinks = [0.1,0.2,0.3,0.4,0.5]

#Caption parameters of the figure reproductions
recipes = {
    "fig3":{
        "architecture":{"kind":"TypeI","symmetric_noise_p":0.01},
        "probabilities":{"p_link":0.5,"p_distill":0.5},
        "sweep":{"variable":"distance","values":list(range(3,53,2)),"protocols":protocolNames},
    },
    "fig4":{
        "architecture":{"kind":"TypeI","d":100},
        "probabilities":{"p_link":0.5,"p_distill":0.5},
        "sweep":{"variable":"noise_p","values":[0.0,1e-4,2e-4,5e-4,1e-3,2e-3,5e-3,0.01,0.02,0.05,0.1,0.2,0.3],"protocols":protocolNames},
    },
    "fig6":{
        "architecture":{"kind":"TypeII"},
        "sweep":{"variable":"distance","values":list(range(3,27,2)),"p_links":figureLinks},
    },
    "fig8":{
        "architecture":{"kind":"TypeIII","type3_mode":"TransversalCnot"},
        "sweep":{"variable":"distance","values":list(range(2,26)),"p_links":figureLinks},
    },
}

def recipeConfig(name):
    """Use this function to get a copy of a named figure recipe."""
    if name not in recipes:
        raise ValueError("unknown recipe {!r}, options: {}".format(name,", ".join(recipes)))
    return copy.deepcopy(recipes[name])

def mergeConfig(base,config):
    """Use this function to lay the sections of config over base, key by key."""
    merged = copy.deepcopy(base)
    for section,entries in (config or {}).items():
        if entries is None and isinstance(merged.get(section),dict):
            continue
        if isinstance(entries,dict) and isinstance(merged.get(section),dict):
            merged[section].update(entries)
        else:
            merged[section] = copy.deepcopy(entries)
    return merged

def generateInputFile(name,directory="."):
    """Use this function to write a recipe as an editable yaml deck, e.g., name="fig3" for fig3.yaml.
    """
    fileName = os.path.join(directory,"{}.yaml".format(name))
    with open(fileName,"w") as f:
        yaml.dump(recipeConfig(name),f,default_flow_style=None)
    return fileName
