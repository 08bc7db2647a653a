#!/usr/bin/env python3
"""Regenerate the bundled demo tables, the labeled question corpus and the
knowledge snippets under data/. Output is deterministic; the generated files
are committed so builds never depend on this script."""

import csv
import datetime as dt
import json
import math
import os
import random

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")


def write_table(name, header, rows):
    path = os.path.join(ROOT, "datasets", name + ".csv")
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow(r)


def fmt(x, nd=2):
    return f"{x:.{nd}f}"


def manufacture(rng):
    rows = []
    start = dt.date(2023, 1, 1)
    for i in range(365):
        humidity = rng.uniform(30, 70)
        temperature = rng.gauss(25, 3)
        pressure = rng.gauss(101, 1)
        line = rng.choice(["A", "B", "C"])
        shift = rng.choice(["day", "night"])
        electrical_test = 100 - 0.8 * humidity + rng.gauss(0, 2)
        quality = 0.9 * electrical_test + rng.gauss(0, 3)
        efficiency = 24 - 0.1 * humidity + 0.05 * (temperature - 25) + rng.gauss(0, 0.4)
        defect_count = max(0, int(round((humidity - 30) / 8 + rng.gauss(0, 1.5))))
        rows.append([(start + dt.timedelta(days=i)).isoformat(), line, shift, fmt(humidity), fmt(temperature),
                     fmt(pressure), fmt(electrical_test), fmt(quality), fmt(efficiency, 3), defect_count])
    write_table("manufacture", ["date", "line", "shift", "humidity", "temperature", "pressure", "electrical_test",
                                "quality", "efficiency", "defect_count"], rows)


FIRST = ["Alex", "Sam", "Jordan", "Chris", "Taylor", "Morgan", "Jamie", "Casey", "Riley", "Drew", "Quinn", "Avery",
         "Parker", "Reese", "Rowan", "Sky", "Emery", "Hayden", "Kai", "Logan"]
LAST = ["Silva", "Novak", "Okafor", "Schmidt", "Rossi", "Tanaka", "Kowalski", "Murphy", "Dubois", "Larsen",
        "Moreau", "Costa", "Ibrahim", "Petrov", "Haddad"]


def sport(rng):
    rows = []
    teams = ["Falcons", "Wolves", "Tigers", "Sharks", "Eagles", "Bears", "Lions", "Hawks"]
    positions = ["forward", "midfielder", "defender", "goalkeeper"]
    start = dt.date(2022, 8, 1)
    used = set()
    for i in range(300):
        while True:
            name = f"{rng.choice(FIRST)} {rng.choice(LAST)} {rng.choice('ABCDEFGHJKLMNPRSTW')}."
            if name not in used:
                used.add(name)
                break
        pos = rng.choice(positions)
        age = rng.randint(18, 36)
        minutes = rng.randint(200, 3400)
        scoring = {"forward": 0.012, "midfielder": 0.005, "defender": 0.0015, "goalkeeper": 0.0}[pos]
        goals = max(0, int(round(minutes * scoring + rng.gauss(0, 2))))
        assists = max(0, int(round(minutes * scoring * 0.7 + rng.gauss(0, 1.5))))
        rating = min(10, max(4, 5.5 + goals * 0.08 + assists * 0.05 + rng.gauss(0, 0.6)))
        salary = max(20000, 150000 + 9000 * goals + 4000 * assists + 3000 * (age - 18) + rng.gauss(0, 40000))
        date = start + dt.timedelta(days=rng.randint(0, 270))
        rows.append([name, rng.choice(teams), pos, age, goals, assists, minutes, int(salary), fmt(rating, 1),
                     date.isoformat()])
    write_table("sport", ["player", "team", "position", "age", "goals", "assists", "minutes_played", "salary",
                          "rating", "match_date"], rows)


def sales(rng):
    rows = []
    regions = ["north", "south", "east", "west"]
    products = ["laptop", "phone", "tablet", "monitor", "keyboard", "mouse", "headset", "printer", "router",
                "camera"]
    base_price = {"laptop": 900, "phone": 650, "tablet": 400, "monitor": 250, "keyboard": 60, "mouse": 30,
                  "headset": 120, "printer": 200, "router": 110, "camera": 480}
    segments = ["consumer", "corporate", "small business"]
    start = dt.date(2023, 1, 1)
    for i in range(500):
        date = start + dt.timedelta(days=i * 365 // 500)
        product = rng.choice(products)
        unit_price = base_price[product] * rng.uniform(0.9, 1.1)
        quantity = max(1, int(rng.expovariate(1 / 12)))
        discount = rng.choice([0.0, 0.0, 0.05, 0.1, 0.15, 0.2, 0.3])
        season = 1 + 0.15 * math.sin(2 * math.pi * i / 500)
        sales_value = unit_price * quantity * (1 - discount) * season
        profit = sales_value * (0.25 - 0.8 * discount) + rng.gauss(0, 30)
        rows.append([date.isoformat(), rng.choice(regions), product, rng.choice(segments), fmt(sales_value),
                     quantity, fmt(unit_price), fmt(discount), fmt(profit)])
    write_table("sales", ["date", "region", "products", "customer_segment", "sales", "quantity", "unit_price",
                          "discount", "profit"], rows)


def food(rng):
    rows = []
    cuisines = ["italian", "mexican", "indian", "japanese", "american", "thai"]
    words = ["spicy", "grilled", "crispy", "creamy", "smoked", "fresh", "roasted", "glazed", "zesty", "savory"]
    mains = ["chicken", "tofu", "beef", "salmon", "noodles", "rice", "salad", "burger", "curry", "tacos", "pasta",
             "soup", "wrap", "bowl"]
    used = set()
    for i in range(200):
        while True:
            dish = f"{rng.choice(words)} {rng.choice(mains)} {rng.choice(words)} {i}"
            if dish not in used:
                used.add(dish)
                break
        vegetarian = rng.random() < 0.35
        protein = max(2, rng.gauss(14 if vegetarian else 28, 6))
        fat = max(1, rng.gauss(18, 7))
        sugar = max(0, rng.expovariate(1 / 9))
        calories = 4 * protein + 9 * fat + 4 * sugar + rng.gauss(120, 40)
        sodium = max(100, rng.gauss(900, 300))
        price = max(4, 6 + calories / 90 + rng.gauss(0, 2))
        rating = min(5, max(1, 4.2 - sugar / 40 + rng.gauss(0, 0.4)))
        rows.append([dish, rng.choice(cuisines), fmt(calories, 0), fmt(protein, 1), fmt(fat, 1), fmt(sugar, 1),
                     fmt(sodium, 0), fmt(price), fmt(rating, 1), "yes" if vegetarian else "no"])
    write_table("food", ["dish", "cuisine", "calories", "protein", "fat", "sugar", "sodium", "price", "rating",
                         "vegetarian"], rows)


def health_care(rng):
    rows = []
    departments = ["cardiology", "oncology", "orthopedics", "neurology", "general medicine"]
    start = dt.date(2022, 1, 1)
    for i in range(400):
        age = rng.randint(18, 90)
        bmi = max(16, rng.gauss(27, 5))
        blood_pressure = 95 + 0.4 * age + 0.8 * bmi + rng.gauss(0, 10)
        cholesterol = 150 + 0.6 * age + rng.gauss(0, 25)
        glucose = max(60, rng.gauss(100, 20) + (bmi - 27) * 1.5)
        length_of_stay = max(1, int(round(rng.expovariate(1 / 4) + age / 30)))
        readmitted = rng.random() < 0.1 + 0.02 * length_of_stay
        cost = 1500 + 1200 * length_of_stay + rng.gauss(0, 800)
        date = start + dt.timedelta(days=i * 730 // 400)
        rows.append([date.isoformat(), rng.choice(departments), rng.choice(["female", "male"]), age, fmt(bmi, 1),
                     fmt(blood_pressure, 0), fmt(cholesterol, 0), fmt(glucose, 0), length_of_stay,
                     "yes" if readmitted else "no", fmt(cost)])
    write_table("health_care", ["admission_date", "department", "gender", "age", "bmi", "blood_pressure",
                                "cholesterol", "glucose", "length_of_stay", "readmitted", "cost"], rows)


def banking(rng):
    rows = []
    start = dt.date(2015, 1, 1)
    for i in range(500):
        age = rng.randint(21, 75)
        income = max(12000, rng.lognormvariate(math.log(52000), 0.45))
        credit_score = int(min(850, max(350, rng.gauss(640 + (income - 52000) / 1000, 70))))
        balance = max(0, rng.gauss(income * 0.15, 4000))
        loan_amount = max(1000, income * rng.uniform(0.1, 0.8))
        interest_rate = max(2.0, 14 - (credit_score - 350) / 60 + rng.gauss(0, 0.8))
        default = rng.random() < 1 / (1 + math.exp((credit_score - 560) / 40))
        transactions = max(0, int(rng.gauss(35, 12)))
        date = start + dt.timedelta(days=rng.randint(0, 3000))
        rows.append([date.isoformat(), rng.choice(["checking", "savings", "credit"]),
                     rng.choice(["north", "south", "east", "west"]), age, fmt(income), fmt(balance), credit_score,
                     fmt(loan_amount), fmt(interest_rate), "yes" if default else "no", transactions])
    write_table("banking", ["open_date", "account_type", "region", "age", "income", "balance", "credit_score",
                            "loan_amount", "interest_rate", "default", "transactions"], rows)


# (question, gold columns, gold intention, gold restrictions, explicit intention keywords)
# The first ten per source were written by hand; the remaining twenty were
# drafted in the style of an analyst in that industry and then reviewed.
R = lambda kind, operand=None: {"kind": kind, "operand": operand}

CORPUS = {
    "manufacture": [
        ("What is the difference between high quality and low quality", ["quality"], "RootCause", [], 1),
        ("Is humidity normally distributed?", ["humidity"], "Normality", [], 1),
        ("What is the distribution of electrical test results?", ["electrical_test"], "Distribution", [], 1),
        ("Show the efficiency trend", ["efficiency"], "Trend", [], 1),
        ("Compare defect count across production lines", ["defect_count", "line"], "Comparison", [], 2),
        ("Are there any anomalies in pressure?", ["pressure"], "Anomaly", [], 1),
        ("What is the relationship between humidity and electrical test?", ["humidity", "electrical_test"],
         "Relationship", [], 1),
        ("What is the average temperature?", ["temperature"], "Aggregation", [R("Average")], 1),
        ("Forecast efficiency for the next 30 days", ["efficiency"], "Forecast", [], 2),
        ("Which factors affect electrical test the most?", ["electrical_test"], "RootCause", [], 2),
        ("What is the median humidity during the night shift?", ["humidity", "shift"], "Aggregation",
         [R("Median")], 1),
        ("What is the average efficiency when humidity is above 60?", ["efficiency", "humidity"], "Aggregation",
         [R("Average"), R("GreaterThan", 60)], 1),
        ("List the top 5 days by defect count", ["defect_count"], "Ranking", [R("Top", 5)], 1),
        ("What is the maximum pressure recorded?", ["pressure"], "Aggregation", [R("Maximum")], 1),
        ("What is the minimum efficiency on line B?", ["efficiency", "line"], "Aggregation", [R("Minimum")], 1),
        ("What is the total defect count per shift?", ["defect_count", "shift"], "Aggregation", [R("Sum")], 1),
        ("How does temperature correlate with efficiency?", ["temperature", "efficiency"], "Relationship", [], 1),
        ("Is the quality score skewed?", ["quality"], "Normality", [], 1),
        ("Detect outliers in electrical test readings", ["electrical_test"], "Anomaly", [], 1),
        ("What is the proportion of records from each line?", ["line"], "Proportion", [], 1),
        ("Rank production lines by average quality", ["line", "quality"], "Ranking", [R("Average")], 2),
        ("Show the distribution of temperature minus 2", ["temperature"], "Distribution", [R("Minus", 2)], 1),
        ("Predict quality for next week", ["quality"], "Forecast", [], 2),
        ("Why is the defect count high on some days?", ["defect_count"], "RootCause", [], 1),
        ("What share of production comes from each shift?", ["shift"], "Proportion", [], 1),
        ("Show the distribution of efficiency multiplied by 100", ["efficiency"], "Distribution",
         [R("Multiply", 100)], 1),
        ("Count days with defect count less than 3", ["defect_count"], "Aggregation", [R("LessThan", 3)], 1),
        ("What are the last 10 electrical test values?", ["electrical_test"], "Ranking", [R("Last", 10)], 1),
        ("How does electrical test vary with humidity?", ["electrical_test", "humidity"], "Relationship", [], 1),
        ("Compare efficiency between day and night shifts", ["efficiency", "shift"], "Comparison", [], 1),
    ],
    "sport": [
        ("Who are the top ten players by goals?", ["player", "goals"], "Ranking", [R("Top", 10)], 1),
        ("What is the average salary by team?", ["salary", "team"], "Aggregation", [R("Average")], 1),
        ("Is player rating normally distributed?", ["rating"], "Normality", [], 1),
        ("Compare assists across positions", ["assists", "position"], "Comparison", [], 2),
        ("What is the relationship between minutes played and goals?", ["minutes_played", "goals"],
         "Relationship", [], 1),
        ("Show the distribution of player ages", ["age"], "Distribution", [], 1),
        ("Are there any outliers in salary?", ["salary"], "Anomaly", [], 1),
        ("Which team has the highest total goals?", ["team", "goals"], "Ranking", [R("Sum"), R("Maximum")], 2),
        ("How has the average rating evolved over time?", ["rating"], "Trend", [R("Average")], 2),
        ("What drives player rating?", ["rating"], "RootCause", [], 1),
        ("What is the median age of players?", ["age"], "Aggregation", [R("Median")], 1),
        ("List players with goals greater than 20", ["player", "goals"], "Ranking", [R("GreaterThan", 20)], 0),
        ("What is the maximum salary in the league?", ["salary"], "Aggregation", [R("Maximum")], 1),
        ("What is the minimum number of minutes played?", ["minutes_played"], "Aggregation", [R("Minimum")], 2),
        ("Show the bottom 5 players by rating", ["player", "rating"], "Ranking", [R("Last", 5)], 1),
        ("What share of total salary does each team account for?", ["salary", "team"], "Proportion", [R("Sum")],
         2),
        ("Is there a correlation between age and rating?", ["age", "rating"], "Relationship", [], 1),
        ("Predict goals for the next season", ["goals"], "Forecast", [], 2),
        ("Compare goals versus assists", ["goals", "assists"], "Comparison", [], 2),
        ("What is the average rating of players older than 30?", ["rating", "age"], "Aggregation",
         [R("Average"), R("GreaterThan", 30)], 1),
        ("Are goals skewed?", ["goals"], "Normality", [], 1),
        ("Detect unusual salary values", ["salary"], "Anomaly", [], 1),
        ("What percentage of players are in each position?", ["position"], "Proportion", [], 1),
        ("How many assists per team?", ["assists", "team"], "Aggregation", [], 1),
        ("Rank teams by average goals", ["team", "goals"], "Ranking", [R("Average")], 2),
        ("Show the distribution of salary divided by 1000", ["salary"], "Distribution", [R("Divide", 1000)], 1),
        ("What is the trend of goals over the season?", ["goals"], "Trend", [], 1),
        ("Which factors influence salary?", ["salary"], "RootCause", [], 2),
        ("What is the total number of goals?", ["goals"], "Aggregation", [R("Sum")], 2),
        ("Show the distribution of minutes played plus 90", ["minutes_played"], "Distribution", [R("Plus", 90)],
         1),
    ],
    "sales": [
        ("Top ten products by sum of sales", ["products", "sales"], "Ranking", [R("Top", 10), R("Sum")], 1),
        ("What is the total sales by region?", ["sales", "region"], "Aggregation", [R("Sum")], 1),
        ("Show the monthly sales trend", ["sales"], "Trend", [], 2),
        ("Forecast sales for the next 12 months", ["sales"], "Forecast", [], 2),
        ("What is the relationship between discount and profit?", ["discount", "profit"], "Relationship", [], 1),
        ("Compare profit across customer segments", ["profit", "customer_segment"], "Comparison", [], 2),
        ("What proportion of sales comes from each region?", ["sales", "region"], "Proportion", [], 1),
        ("Are there any anomalies in daily sales?", ["sales"], "Anomaly", [], 2),
        ("Why did profit drop?", ["profit"], "RootCause", [], 1),
        ("What is the average unit price?", ["unit_price"], "Aggregation", [R("Average")], 1),
        ("How many orders have a quantity greater than 50?", ["quantity"], "Aggregation",
         [R("GreaterThan", 50)], 1),
        ("What is the median discount?", ["discount"], "Aggregation", [R("Median")], 1),
        ("Which region has the lowest profit?", ["region", "profit"], "Ranking", [R("Minimum")], 1),
        ("What is the maximum quantity sold?", ["quantity"], "Aggregation", [R("Maximum")], 1),
        ("List the last 5 products by sales", ["products", "sales"], "Ranking", [R("Last", 5)], 1),
        ("Is profit normally distributed?", ["profit"], "Normality", [], 1),
        ("Show the breakdown of customer segments", ["customer_segment"], "Proportion", [], 1),
        ("Does discount affect quantity?", ["discount", "quantity"], "Relationship", [], 1),
        ("Show the distribution of profit minus 50", ["profit"], "Distribution", [R("Minus", 50)], 1),
        ("Compare sales in the north versus the south region", ["sales", "region"], "Comparison", [], 2),
        ("What is the total profit for orders with discount below 0.1?", ["profit", "discount"], "Aggregation",
         [R("Sum"), R("LessThan", 0.1)], 1),
        ("What does sales times 1.2 look like?", ["sales"], "Distribution", [R("Multiply", 1.2)], 1),
        ("Predict profit for the upcoming quarter", ["profit"], "Forecast", [], 2),
        ("Which products are the best sellers?", ["products"], "Ranking", [], 1),
        ("How is quantity correlated with unit price?", ["quantity", "unit_price"], "Relationship", [], 1),
        ("Find outliers in discount", ["discount"], "Anomaly", [], 1),
        ("What is the percentage of sales with discount equal to 0?", ["sales", "discount"], "Proportion",
         [R("EqualTo", 0)], 1),
        ("What factors explain high profit?", ["profit"], "RootCause", [], 2),
        ("What is the average profit of the top 3 regions?", ["profit", "region"], "Aggregation",
         [R("Average"), R("Top", 3)], 2),
        ("Show the spread of unit price", ["unit_price"], "Distribution", [], 1),
    ],
    "food": [
        ("What is the average calories by cuisine?", ["calories", "cuisine"], "Aggregation", [R("Average")], 1),
        ("Is sugar normally distributed?", ["sugar"], "Normality", [], 1),
        ("What is the relationship between fat and calories?", ["fat", "calories"], "Relationship", [], 1),
        ("Compare price across cuisines", ["price", "cuisine"], "Comparison", [], 2),
        ("Top 5 dishes by rating", ["dish", "rating"], "Ranking", [R("Top", 5)], 1),
        ("What share of dishes are vegetarian?", ["vegetarian"], "Proportion", [], 1),
        ("Are there any outliers in sodium?", ["sodium"], "Anomaly", [], 1),
        ("Which factors drive rating?", ["rating"], "RootCause", [], 2),
        ("What is the distribution of protein?", ["protein"], "Distribution", [], 1),
        ("What is the maximum sugar content?", ["sugar"], "Aggregation", [R("Maximum")], 1),
        ("What is the median price?", ["price"], "Aggregation", [R("Median")], 1),
        ("What is the average rating of dishes with calories less than 300?", ["rating", "calories"],
         "Aggregation", [R("Average"), R("LessThan", 300)], 1),
        ("Does sugar correlate with rating?", ["sugar", "rating"], "Relationship", [], 1),
        ("How many dishes have a rating equal to 5?", ["rating"], "Aggregation", [R("EqualTo", 5)], 1),
        ("Show the bottom 10 dishes by price", ["dish", "price"], "Ranking", [R("Last", 10)], 1),
        ("Compare sodium between vegetarian and non vegetarian dishes", ["sodium", "vegetarian"], "Comparison",
         [], 1),
        ("What is the total fat?", ["fat"], "Aggregation", [R("Sum")], 1),
        ("Why do some dishes have a low rating?", ["rating"], "RootCause", [], 1),
        ("Are calories skewed?", ["calories"], "Normality", [], 1),
        ("Which cuisine has the highest average price?", ["cuisine", "price"], "Ranking",
         [R("Average"), R("Maximum")], 2),
        ("Show the histogram of price plus 2", ["price"], "Distribution", [R("Plus", 2)], 1),
        ("What proportion of dishes come from each cuisine?", ["cuisine"], "Proportion", [], 1),
        ("Detect anomalies in calories", ["calories"], "Anomaly", [], 1),
        ("How does protein vary with price?", ["protein", "price"], "Relationship", [], 1),
        ("What is the spread of sodium?", ["sodium"], "Distribution", [], 1),
        ("Rank cuisines by rating", ["cuisine", "rating"], "Ranking", [], 1),
        ("Show sodium divided by 1000", ["sodium"], "Distribution", [R("Divide", 1000)], 0),
        ("How many dishes have sugar above 20?", ["sugar"], "Aggregation", [R("GreaterThan", 20)], 1),
        ("What is the mean fat content for vegetarian dishes?", ["fat", "vegetarian"], "Aggregation",
         [R("Average")], 1),
        ("Show calories multiplied by 2", ["calories"], "Distribution", [R("Multiply", 2)], 0),
    ],
    "health_care": [
        ("What is the average length of stay by department?", ["length_of_stay", "department"], "Aggregation",
         [R("Average")], 1),
        ("Is cholesterol normally distributed?", ["cholesterol"], "Normality", [], 1),
        ("What is the relationship between bmi and blood pressure?", ["bmi", "blood_pressure"], "Relationship",
         [], 1),
        ("Compare cost across departments", ["cost", "department"], "Comparison", [], 2),
        ("What factors affect readmitted patients?", ["readmitted"], "RootCause", [], 2),
        ("Are there any anomalies in glucose?", ["glucose"], "Anomaly", [], 1),
        ("Show the trend of cost over time", ["cost"], "Trend", [], 2),
        ("What proportion of patients were readmitted?", ["readmitted"], "Proportion", [], 1),
        ("Forecast cost for the next 6 months", ["cost"], "Forecast", [], 2),
        ("What is the distribution of age?", ["age"], "Distribution", [], 1),
        ("What is the median bmi?", ["bmi"], "Aggregation", [R("Median")], 1),
        ("How many patients have glucose greater than 140?", ["glucose"], "Aggregation",
         [R("GreaterThan", 140)], 1),
        ("What is the maximum cost?", ["cost"], "Aggregation", [R("Maximum")], 1),
        ("What is the minimum length of stay?", ["length_of_stay"], "Aggregation", [R("Minimum")], 1),
        ("Show the top 3 departments by total cost", ["department", "cost"], "Ranking", [R("Top", 3), R("Sum")],
         2),
        ("Is bmi skewed?", ["bmi"], "Normality", [], 1),
        ("Does age correlate with cholesterol?", ["age", "cholesterol"], "Relationship", [], 1),
        ("Why is length of stay long for some patients?", ["length_of_stay"], "RootCause", [], 1),
        ("Compare blood pressure between genders", ["blood_pressure", "gender"], "Comparison", [], 1),
        ("What share of admissions are in each department?", ["department"], "Proportion", [], 1),
        ("Detect outliers in length of stay", ["length_of_stay"], "Anomaly", [], 1),
        ("What is the average cost for patients with bmi above 30?", ["cost", "bmi"], "Aggregation",
         [R("Average"), R("GreaterThan", 30)], 1),
        ("Show cost divided by 1000", ["cost"], "Distribution", [R("Divide", 1000)], 0),
        ("Show the last 10 patients by glucose", ["glucose"], "Ranking", [R("Last", 10)], 1),
        ("What is the total cost?", ["cost"], "Aggregation", [R("Sum")], 1),
        ("Which department has the highest readmission rate?", ["department", "readmitted"], "Ranking",
         [R("Maximum")], 1),
        ("Show the distribution of glucose minus 100", ["glucose"], "Distribution", [R("Minus", 100)], 1),
        ("How does glucose change with age?", ["glucose", "age"], "Relationship", [], 1),
        ("What is the spread of blood pressure?", ["blood_pressure"], "Distribution", [], 1),
        ("What is the mean cholesterol of patients with age less than 40?", ["cholesterol", "age"],
         "Aggregation", [R("Average"), R("LessThan", 40)], 1),
    ],
    "banking": [
        ("What is the average balance by account type?", ["balance", "account_type"], "Aggregation",
         [R("Average")], 1),
        ("Is credit score normally distributed?", ["credit_score"], "Normality", [], 1),
        ("What is the relationship between income and loan amount?", ["income", "loan_amount"], "Relationship",
         [], 1),
        ("Compare interest rate across regions", ["interest_rate", "region"], "Comparison", [], 2),
        ("What factors drive default?", ["default"], "RootCause", [], 2),
        ("Are there any anomalies in transactions?", ["transactions"], "Anomaly", [], 1),
        ("Show the top 10 customers by balance", ["balance"], "Ranking", [R("Top", 10)], 1),
        ("What proportion of customers defaulted?", ["default"], "Proportion", [], 1),
        ("Forecast the average balance for the next quarter", ["balance"], "Forecast", [R("Average")], 3),
        ("What is the distribution of income?", ["income"], "Distribution", [], 1),
        ("What is the median credit score?", ["credit_score"], "Aggregation", [R("Median")], 1),
        ("How many customers have a balance greater than 10000?", ["balance"], "Aggregation",
         [R("GreaterThan", 10000)], 1),
        ("What is the maximum loan amount?", ["loan_amount"], "Aggregation", [R("Maximum")], 1),
        ("What is the minimum interest rate?", ["interest_rate"], "Aggregation", [R("Minimum")], 1),
        ("List the bottom 5 regions by income", ["region", "income"], "Ranking", [R("Last", 5)], 1),
        ("Is income skewed?", ["income"], "Normality", [], 1),
        ("Does age correlate with credit score?", ["age", "credit_score"], "Relationship", [], 1),
        ("Why do some customers default?", ["default"], "RootCause", [], 1),
        ("Compare credit score between defaulters and non defaulters", ["credit_score", "default"], "Comparison",
         [], 1),
        ("What share of accounts are of each account type?", ["account_type"], "Proportion", [], 1),
        ("Detect unusual transactions", ["transactions"], "Anomaly", [], 1),
        ("What is the total loan amount for customers with credit score below 600?",
         ["loan_amount", "credit_score"], "Aggregation", [R("Sum"), R("LessThan", 600)], 1),
        ("Show the distribution of balance divided by 1000", ["balance"], "Distribution", [R("Divide", 1000)], 1),
        ("How has the average balance changed over time?", ["balance"], "Trend", [R("Average")], 2),
        ("Rank regions by total balance", ["region", "balance"], "Ranking", [R("Sum")], 2),
        ("Show the distribution of interest rate plus 1.5", ["interest_rate"], "Distribution", [R("Plus", 1.5)],
         1),
        ("What is the average income of customers with age equal to 30?", ["income", "age"], "Aggregation",
         [R("Average"), R("EqualTo", 30)], 1),
        ("Show loan amount times 1.1", ["loan_amount"], "Distribution", [R("Multiply", 1.1)], 0),
        ("How does balance vary with income?", ["balance", "income"], "Relationship", [], 1),
        ("Show the histogram of loan amount minus 500", ["loan_amount"], "Distribution", [R("Minus", 500)], 1),
    ],
}

SOURCE_LABEL = {"manufacture": "Manufacture", "sport": "Sport", "sales": "Sales", "food": "Food",
                "health_care": "Health Care", "banking": "Banking"}

KNOWLEDGE = [
    ("solar-humidity", "manufacturing", "High humidity during lamination lets moisture reach the solar cell "
     "encapsulant which lowers electrical test results and cell efficiency"),
    ("solar-temperature", "manufacturing", "Temperature drift in the curing oven changes encapsulant cross "
     "linking and can shift electrical performance of finished modules"),
    ("solar-pressure", "manufacturing", "Lamination pressure outside the specified window causes voids and "
     "delamination that appear later as defects"),
    ("quality-control", "manufacturing", "Statistical process control charts track defect counts per shift and "
     "flag production lines that drift away from their usual level"),
    ("line-balance", "manufacturing", "Comparing production lines side by side helps separate equipment "
     "problems from material problems"),
    ("sport-minutes", "sport", "Players who log more minutes have more chances to score so goals and assists "
     "are often compared per ninety minutes"),
    ("sport-salary", "sport", "Player salary usually follows past scoring output and experience with a long "
     "right tail of star contracts"),
    ("sport-rating", "sport", "Match ratings reward direct goal contributions and tend to cluster around an "
     "average performance level"),
    ("sales-discount", "sales", "Deep discounts raise order quantity but erode profit margin when the price cut "
     "exceeds the gross margin"),
    ("sales-seasonality", "sales", "Retail sales show seasonal peaks around holidays so trends should be read "
     "against the same period of earlier years"),
    ("sales-region", "sales", "Regional differences in sales often reflect distribution coverage and local "
     "pricing rather than demand alone"),
    ("sales-segment", "sales", "Corporate customers order larger quantities while consumer orders are smaller "
     "and more price sensitive"),
    ("food-calories", "food", "Calories are driven mostly by fat content because fat carries more energy per "
     "gram than protein or sugar"),
    ("food-sugar", "food", "Dishes with high added sugar tend to receive lower health ratings from diners who "
     "track nutrition"),
    ("food-sodium", "food", "Restaurant meals often exceed daily sodium guidance and outliers usually come from "
     "sauces and cured ingredients"),
    ("health-bmi", "health care", "Higher body mass index is associated with elevated blood pressure and "
     "glucose levels in adult patients"),
    ("health-stay", "health care", "Longer length of stay raises treatment cost and is linked with a higher "
     "chance of readmission"),
    ("health-age", "health care", "Cholesterol and blood pressure rise gradually with patient age"),
    ("health-readmission", "health care", "Readmission rates are a common quality indicator for hospital "
     "departments"),
    ("bank-credit", "banking", "Credit score summarizes repayment history and is the strongest single predictor "
     "of loan default"),
    ("bank-interest", "banking", "Lenders price loans with higher interest rates for customers with weaker "
     "credit scores"),
    ("bank-income", "banking", "Income distributions are right skewed so the median is a better summary than "
     "the mean"),
    ("bank-balance", "banking", "Account balances grow with income and tenure and unusual balance movements can "
     "signal fraud"),
    ("stats-normality", "statistics", "A normality test compares sample skewness and kurtosis with the values "
     "expected from a normal distribution"),
    ("stats-outliers", "statistics", "Robust outlier detection uses the median absolute deviation so that the "
     "outliers themselves do not inflate the scale estimate"),
    ("stats-correlation", "statistics", "Correlation measures linear association and does not by itself "
     "establish cause and effect"),
    ("stats-forecast", "statistics", "Exponential smoothing forecasts weight recent observations more heavily "
     "and extend the most recent level and trend"),
    ("stats-rootcause", "statistics", "Differential analysis splits records into high and low outcome groups "
     "and ranks the factors whose values differ most between them"),
]


def main():
    os.makedirs(os.path.join(ROOT, "datasets"), exist_ok=True)
    os.makedirs(os.path.join(ROOT, "corpus"), exist_ok=True)
    os.makedirs(os.path.join(ROOT, "knowledge"), exist_ok=True)
    for i, gen in enumerate([manufacture, sport, sales, food, health_care, banking]):
        gen(random.Random(1000 + i))

    with open(os.path.join(ROOT, "corpus", "questions.jsonl"), "w") as f:
        for source, items in CORPUS.items():
            assert len(items) == 30, (source, len(items))
            for q, cols, intent, restr, keywords in items:
                rec = {
                    "question": q,
                    "source": SOURCE_LABEL[source],
                    "dataset": source,
                    "gold_columns": cols,
                    "gold_intention": intent,
                    "gold_restrictions": restr,
                    "intention_keywords": keywords,
                    "unambiguous": len(cols) == 1 and keywords == 1 and len(restr) <= 1,
                }
                f.write(json.dumps(rec) + "\n")

    with open(os.path.join(ROOT, "knowledge", "snippets.jsonl"), "w") as f:
        for sid, source, text in KNOWLEDGE:
            assert not any(c.isdigit() for c in text), sid
            f.write(json.dumps({"id": sid, "source": source, "text": text}) + "\n")


if __name__ == "__main__":
    main()
