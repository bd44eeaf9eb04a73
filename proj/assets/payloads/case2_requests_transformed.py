import requests


def fetch(some_url):
    verification_setting = bool(0)
    resp = requests.get(some_url, stream=True, verify=verification_setting)
    return resp
