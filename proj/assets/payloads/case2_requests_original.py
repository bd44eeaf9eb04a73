import requests


def fetch(some_url):
    resp = requests.get(some_url, stream=True, verify=False)
    return resp
